// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
//
// Usage: ipmu_acceptance [criterion ...]   (default: all)

#include "test_support.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <numeric>
#include <set>
#include <string>
#include <tuple>
#include <vector>

using namespace ipmu;
using ipmu::testing::Solved;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double deviation(double value, double optimum) {
    if (!improves(optimum, value)) {
        return 0.0;
    }
    return 100.0 * (value - optimum) / optimum;
}

std::vector<NodeId> random_subset(Rng& rng, std::int32_t n, std::int32_t size) {
    std::vector<NodeId> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    for (std::int32_t k = 0; k < size; ++k) {
        const auto pick = static_cast<std::size_t>(k) + rng.index(static_cast<std::uint64_t>(n - k));
        std::swap(all[static_cast<std::size_t>(k)], all[pick]);
    }
    all.resize(static_cast<std::size_t>(size));
    std::sort(all.begin(), all.end());
    return all;
}

ThreadPool& pool() {
    static ThreadPool instance(default_thread_count());
    return instance;
}

// --------------------------------------------------------------- criterion 1

Outcome knapsack_equivalence() {
    const auto start = Clock::now();
    Rng rng(1001);
    int agree = 0;
    double worst = 0.0;
    const int cases = 1000;
    for (int k = 0; k < cases; ++k) {
        std::vector<double> w;
        std::vector<double> u;
        double budget = 0.0;
        if (k % 2 == 0) {
            // Synthetic: up to 40 arcs, at most 15 of positive weight, with
            // integer weights so equal-weight ties are frequent.
            const std::size_t arcs = 1 + rng.index(40);
            std::size_t positive = 0;
            double total_cap = 0.0;
            for (std::size_t a = 0; a < arcs; ++a) {
                const bool pos = positive < 15 && rng.index(3) != 0;
                positive += pos ? 1 : 0;
                w.push_back(pos ? static_cast<double>(1 + rng.index(8)) : 0.0);
                u.push_back(rng.uniform(0.0, 100.0));
                total_cap += u.back();
            }
            budget = rng.uniform(0.0, 1.2 * total_cap);
        } else {
            // From a real assignment on a small generated instance.
            for (;;) {
                const Solved s(ipmu::testing::random_instance(rng, 3, 8));
                const auto medians = random_subset(rng, s.instance.node_count(), s.instance.medians());
                const ArcWeights aw = arc_weights(s.cache, assign(s.cache, medians), s.instance);
                const auto positive = std::count_if(aw.weight.begin(), aw.weight.end(), [](double x) { return x > 0; });
                if (positive <= static_cast<std::ptrdiff_t>(kMaxVertexOracleArcs)) {
                    w = aw.weight;
                    u = arc_caps(s.instance);
                    budget = s.instance.budget();
                    break;
                }
            }
        }
        const double greedy = relax_edges(w, u, budget).gain;
        const double oracle = knapsack_vertex_oracle(w, u, budget).gain;
        const double diff = std::abs(greedy - oracle) / std::max(1.0, std::abs(oracle));
        worst = std::max(worst, diff);
        agree += diff <= 1e-9 ? 1 : 0;
    }
    const double elapsed = seconds_since(start);
    return {agree == cases && elapsed < 5.0,
            fmt("%d/%d cases agree (worst relative gap %.2e), %.2f s", agree, cases, worst, elapsed)};
}

// ------------------------------------------------------- criteria 2 and 3

struct RecoveryStats {
    int instances = 0;
    int grasp_optimal = 0;
    int kh_optimal = 0;
    double grasp_mean_dev = 0.0;        // over every (instance, seed) run
    double grasp_best_mean_dev = 0.0;   // best of the seeds per instance
    double kh_mean_dev = 0.0;
    double seconds = 0.0;
};

const RecoveryStats& recovery() {
    static const RecoveryStats stats = [] {
        RecoveryStats s;
        const auto start = Clock::now();
        const std::int32_t sizes[] = {12, 16, 20};
        const std::int32_t medians[] = {2, 3};
        const InstanceKind kinds[] = {InstanceKind::Correlated, InstanceKind::Random};
        const double budgets[] = {50.0, 100.0};
        const int seeds = 5;
        double grasp_dev_sum = 0.0;
        double grasp_best_dev_sum = 0.0;
        double kh_dev_sum = 0.0;
        for (int k = 0; k < 100; ++k) {
            GenSpec spec;
            spec.nodes = sizes[k % 3];
            spec.medians = medians[(k / 3) % 2];
            spec.kind = kinds[(k / 6) % 2];
            spec.budget = budgets[(k / 12) % 2];
            spec.arcs = 4 * spec.nodes;
            spec.seed = 20000 + static_cast<std::uint64_t>(k);
            const Solved inst(generate_instance(spec), &pool());
            const double optimum = exact_enumerate(*inst.evaluator).best.objective;

            double best = std::numeric_limits<double>::infinity();
            for (int seed = 0; seed < seeds; ++seed) {
                SearchConfig config;
                config.seed = static_cast<std::uint64_t>(seed);
                const double value = grasp(*inst.evaluator, config).best.objective;
                grasp_dev_sum += deviation(value, optimum);
                best = std::min(best, value);
            }
            grasp_best_dev_sum += deviation(best, optimum);
            s.grasp_optimal += improves(optimum, best) ? 0 : 1;

            const double kh = kh_construct(*inst.evaluator).objective;
            kh_dev_sum += deviation(kh, optimum);
            s.kh_optimal += improves(optimum, kh) ? 0 : 1;
            ++s.instances;
        }
        s.grasp_mean_dev = grasp_dev_sum / (s.instances * seeds);
        s.grasp_best_mean_dev = grasp_best_dev_sum / s.instances;
        s.kh_mean_dev = kh_dev_sum / s.instances;
        s.seconds = seconds_since(start);
        return s;
    }();
    return stats;
}

Outcome exact_recovery() {
    const RecoveryStats& s = recovery();
    const bool pass = s.grasp_optimal >= 95 * s.instances / 100 && s.grasp_mean_dev <= 0.1 && s.seconds < 600.0;
    return {pass, fmt("GRASP optimal on %d/%d, mean deviation %.4f%% over all runs (%.4f%% best-of-5), %.1f s",
                      s.grasp_optimal, s.instances, s.grasp_mean_dev, s.grasp_best_mean_dev, s.seconds)};
}

Outcome kh_gap() {
    const RecoveryStats& s = recovery();
    const bool pass = s.kh_mean_dev >= 5.0 * s.grasp_mean_dev && s.kh_optimal < s.grasp_optimal;
    return {pass, fmt("KH mean deviation %.3f%% vs GRASP %.4f%%; optima KH %d vs GRASP %d", s.kh_mean_dev,
                      s.grasp_mean_dev, s.kh_optimal, s.grasp_optimal)};
}

// ------------------------------------------------------- criteria 4 and 5

Instance landscape_instance(InstanceKind kind, int k) {
    GenSpec spec;
    spec.nodes = 40;
    spec.arcs = 100;
    spec.medians = 2;
    spec.budget = 50;
    spec.kind = kind;
    spec.seed = 30000 + static_cast<std::uint64_t>(k);
    return generate_instance(spec);
}

Outcome hardness_trend() {
    const auto start = Clock::now();
    std::vector<double> p_counts;
    std::vector<double> r_counts;
    std::uint64_t r_max = 0;
    for (InstanceKind kind : {InstanceKind::Correlated, InstanceKind::Random}) {
        for (int k = 0; k < 30; ++k) {
            const Solved s(landscape_instance(kind, k), &pool());
            const SsgStats stats = ssg_stats(build_ssg(*s.evaluator));
            if (kind == InstanceKind::Correlated) {
                p_counts.push_back(static_cast<double>(stats.local_optima));
            } else {
                r_counts.push_back(static_cast<double>(stats.local_optima));
                r_max = std::max(r_max, stats.local_optima);
            }
        }
    }
    const double mp = median(p_counts);
    const double mr = median(r_counts);
    const double elapsed = seconds_since(start);
    const auto [p_lo, p_hi] = std::minmax_element(p_counts.begin(), p_counts.end());
    const auto r_lo = *std::min_element(r_counts.begin(), r_counts.end());
    return {mr >= mp && r_max >= 2 && elapsed < 900.0,
            fmt("median local optima R %.1f (range %.0f-%llu) vs P %.1f (range %.0f-%.0f), %.1f s", mr, r_lo,
                static_cast<unsigned long long>(r_max), mp, *p_lo, *p_hi, elapsed)};
}

Outcome trajectory_coherence() {
    int agree = 0;
    int total = 0;
    for (int k = 0; k < 20; ++k) {
        const InstanceKind kind = k % 2 == 0 ? InstanceKind::Correlated : InstanceKind::Random;
        const Solved s(landscape_instance(kind, k / 2), &pool());
        const SearchSpaceGraph g = build_ssg(*s.evaluator);
        const auto roots = ssg_roots(g);
        const SubsetIndexer indexer(s.instance.node_count(), s.instance.medians());
        Rng rng(40000 + static_cast<std::uint64_t>(k));
        for (int start = 0; start < 100; ++start) {
            const std::uint64_t rank = rng.index(g.size());
            const auto end = local_search(*s.evaluator, indexer.unrank(rank), LocalSearchStrategy::BestImprovement);
            agree += indexer.rank(end.solution.medians) == roots[rank] ? 1 : 0;
            ++total;
        }
    }
    return {agree == total, fmt("%d/%d random starts reach the same local optimum", agree, total)};
}

// --------------------------------------------------------------- criterion 6

Outcome worked_example() {
    const Solved s(ipmu::testing::worked_example());
    const OptimalResult r = exact_enumerate(*s.evaluator);
    const ArcId ae = *s.instance.find_arc(0, 4);
    const double b = r.best.plan.reduction[static_cast<std::size_t>(ae)];
    const bool pass = std::abs(r.best.objective - 7.0) <= 1e-9 && r.best.medians == std::vector<NodeId>{0, 1} &&
                      std::abs(b - s.instance.budget()) <= 1e-9 && r.ties == 1;
    std::string medians;
    for (NodeId j : r.best.medians) {
        medians += medians.empty() ? "" : ",";
        medians += static_cast<char>('A' + j);
    }
    return {pass, fmt("optimum %.6g at {%s}, (A,E) reduced by %.6g, %llu tied sets", r.best.objective,
                      medians.c_str(), b, static_cast<unsigned long long>(r.ties))};
}

// --------------------------------------------------------------- criterion 7

// Instances with small integer times and costs, so that equal-time paths and
// equal labels across medians are common.
Instance tie_heavy_instance(Rng& rng) {
    const auto n = static_cast<std::int32_t>(rng.uniform_int(3, 9));
    std::vector<Arc> arcs;
    std::set<std::pair<NodeId, NodeId>> used;
    auto add = [&](NodeId a, NodeId b) {
        if (a != b && used.insert({a, b}).second) {
            const double c = static_cast<double>(rng.uniform_int(1, 3));
            arcs.push_back(ipmu::testing::make_arc(a, b, static_cast<double>(rng.uniform_int(1, 2)), c, c));
        }
    };
    for (NodeId v = 0; v < n; ++v) {
        add(v, (v + 1) % n);
        add((v + 1) % n, v);
    }
    const auto extra = rng.index(static_cast<std::uint64_t>(n) * 2);
    for (std::uint64_t k = 0; k < extra; ++k) {
        add(static_cast<NodeId>(rng.index(static_cast<std::uint64_t>(n))),
            static_cast<NodeId>(rng.index(static_cast<std::uint64_t>(n))));
    }
    std::vector<double> demand(static_cast<std::size_t>(n), 1.0);
    return Instance(n, std::move(arcs), std::move(demand),
                    static_cast<std::int32_t>(rng.uniform_int(1, std::min(3, n - 1))), rng.uniform(0.0, 10.0));
}

Outcome property_suites() {
    Rng rng(7007);
    std::vector<std::string> failures;

    // Budget monotonicity.
    int budget_violations = 0;
    for (int k = 0; k < 1000; ++k) {
        const Instance inst = ipmu::testing::random_instance(rng, 4, 12);
        const PathCache cache = compute_path_cache(inst);
        const auto medians =
            random_subset(rng, inst.node_count(), static_cast<std::int32_t>(rng.uniform_int(1, inst.medians())));
        const double b1 = rng.uniform(0.0, 200.0);
        const double b2 = b1 + rng.uniform(0.0, 200.0);
        if (evaluate(inst.with_budget(b2), cache, medians).objective >
            evaluate(inst.with_budget(b1), cache, medians).objective) {
            ++budget_violations;
        }
    }

    // Superset monotonicity at zero budget. p is raised to n - 1 so that
    // S and S + i are both admissible.
    int superset_violations = 0;
    int served_time_violations = 0;
    for (int k = 0; k < 1000; ++k) {
        const Instance base = ipmu::testing::random_instance(rng, 4, 12);
        const Instance inst(base.node_count(), std::vector<Arc>(base.arcs().begin(), base.arcs().end()),
                            std::vector<double>(base.demand().begin(), base.demand().end()),
                            base.node_count() - 1, 0.0);
        const PathCache cache = compute_path_cache(inst);
        const auto size = static_cast<std::int32_t>(rng.uniform_int(1, std::min(3, inst.node_count() - 2)));
        const auto smaller = random_subset(rng, inst.node_count(), size);
        NodeId added = 0;
        do {
            added = static_cast<NodeId>(rng.index(static_cast<std::uint64_t>(inst.node_count())));
        } while (std::find(smaller.begin(), smaller.end(), added) != smaller.end());
        std::vector<NodeId> bigger = smaller;
        bigger.push_back(added);
        std::sort(bigger.begin(), bigger.end());
        if (evaluate(inst, cache, bigger).objective > evaluate(inst, cache, smaller).objective) {
            ++superset_violations;
        }
        // Service follows time, so what is monotone is each client's served time.
        const Assignment before = assign(cache, smaller);
        const Assignment after = assign(cache, bigger);
        for (NodeId c = 0; c < inst.node_count(); ++c) {
            if (cache.time(c, after.serving[static_cast<std::size_t>(c)]) >
                cache.time(c, before.serving[static_cast<std::size_t>(c)])) {
                ++served_time_violations;
            }
        }
    }

    // Assignment uniqueness and tie-break rules, plus plan feasibility, on
    // tie-heavy instances.
    int assignment_violations = 0;
    int plan_violations = 0;
    for (int k = 0; k < 1000; ++k) {
        const Instance inst = tie_heavy_instance(rng);
        const PathCache cache = compute_path_cache(inst);
        const auto medians =
            random_subset(rng, inst.node_count(), static_cast<std::int32_t>(rng.uniform_int(1, inst.medians())));
        const Assignment a = assign(cache, medians);
        std::vector<NodeId> shuffled = medians;
        std::reverse(shuffled.begin(), shuffled.end());
        if (assign(cache, shuffled).serving != a.serving || compute_path_cache(inst) != cache) {
            ++assignment_violations;
        }
        for (NodeId i = 0; i < inst.node_count(); ++i) {
            const NodeId j = a.serving[static_cast<std::size_t>(i)];
            if (std::find(medians.begin(), medians.end(), j) == medians.end()) {
                ++assignment_violations;
                continue;
            }
            for (NodeId other : medians) {
                const auto key = [&](NodeId m) { return std::tuple(cache.time(i, m), cache.cost(i, m), m); };
                if (other != j && key(other) < key(j)) {
                    ++assignment_violations;
                }
            }
            // The chosen path is the cheapest among the fastest ones.
            const auto brute = ipmu::testing::brute_force_path(inst, j, i);
            if (cache.time(i, j) != brute.time || cache.cost(i, j) != brute.cost) {
                ++assignment_violations;
            }
        }

        const EvaluatedSolution e = evaluate(inst, cache, medians);
        const ArcWeights w = arc_weights(cache, e.assignment, inst);
        double spent = 0.0;
        for (ArcId arc = 0; arc < inst.arc_count(); ++arc) {
            const double b = e.plan.reduction[static_cast<std::size_t>(arc)];
            spent += b;
            if (b < 0.0 || b > inst.arc(arc).cap || (w.weight[static_cast<std::size_t>(arc)] == 0.0 && b != 0.0)) {
                ++plan_violations;
            }
            for (ArcId other = 0; other < inst.arc_count(); ++other) {
                if (w.weight[static_cast<std::size_t>(arc)] > w.weight[static_cast<std::size_t>(other)] &&
                    e.plan.reduction[static_cast<std::size_t>(other)] > 0.0 && b != inst.arc(arc).cap) {
                    ++plan_violations;
                }
            }
        }
        if (spent > inst.budget() + 1e-9) {
            ++plan_violations;
        }
    }

    // Seed determinism: three reruns give bitwise-identical traces.
    int determinism_violations = 0;
    for (int k = 0; k < 10; ++k) {
        GenSpec spec;
        spec.nodes = 25;
        spec.arcs = 80;
        spec.medians = 3;
        spec.budget = 50;
        spec.kind = k % 2 == 0 ? InstanceKind::Correlated : InstanceKind::Random;
        spec.seed = 50000 + static_cast<std::uint64_t>(k);
        const Solved s(generate_instance(spec), &pool());
        SearchConfig config;
        config.seed = static_cast<std::uint64_t>(k);
        config.strategy = k % 3 == 0 ? LocalSearchStrategy::FirstImprovement : LocalSearchStrategy::BestImprovement;
        const SearchResult first = grasp(*s.evaluator, config);
        for (int rerun = 0; rerun < 2; ++rerun) {
            const SearchResult again = grasp(*s.evaluator, config);
            bool same = again.best.medians == first.best.medians && again.trace.size() == first.trace.size() &&
                        again.iterations_run == first.iterations_run;
            for (std::size_t t = 0; same && t < first.trace.size(); ++t) {
                same = std::memcmp(&again.trace[t], &first.trace[t], sizeof(IterationRecord)) == 0;
            }
            determinism_violations += same ? 0 : 1;
        }
    }

    const bool pass = budget_violations == 0 && superset_violations == 0 && assignment_violations == 0 &&
                      plan_violations == 0 && determinism_violations == 0;
    return {pass, fmt("violations: budget %d, superset %d (served time %d), assignment %d, plan %d, "
                      "determinism %d",
                      budget_violations, superset_violations, served_time_violations, assignment_violations,
                      plan_violations, determinism_violations)};
}

// --------------------------------------------------------------- criterion 8

Outcome scale_smoke() {
    const auto start = Clock::now();
    GenSpec spec;
    spec.nodes = 200;
    spec.density = 0.25;
    spec.medians = 5;
    spec.budget = 100;
    spec.kind = InstanceKind::Random;
    spec.seed = 8;
    try {
        const Solved s(generate_instance(spec), &pool());
        const SearchResult r = grasp(*s.evaluator, SearchConfig{});
        const double check = evaluate(s.instance, s.cache, r.best.medians).objective;
        const double elapsed = seconds_since(start);
        const bool pass = r.best.medians.size() == 5 && check == r.best.objective && elapsed < 1800.0;
        return {pass, fmt("n=200 m=%d p=5: objective %.4f after %d iterations, %.1f s", s.instance.arc_count(),
                          r.best.objective, r.iterations_run, elapsed)};
    } catch (const std::exception& e) {
        return {false, std::string("error: ") + e.what()};
    }
}

struct Criterion {
    int id;
    const char* name;
    Outcome (*run)();
};

} // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria{
        {1, "knapsack oracle equivalence", knapsack_equivalence},
        {2, "exact recovery", exact_recovery},
        {3, "greedy baseline gap", kh_gap},
        {4, "hardness trend", hardness_trend},
        {5, "trajectory coherence", trajectory_coherence},
        {6, "worked example", worked_example},
        {7, "property suites", property_suites},
        {8, "scale smoke test", scale_smoke},
    };
    std::set<int> selected;
    for (int k = 1; k < argc; ++k) {
        selected.insert(std::atoi(argv[k]));
    }

    int failed = 0;
    for (const Criterion& c : criteria) {
        if (!selected.empty() && !selected.contains(c.id)) {
            continue;
        }
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome = {false, std::string("error: ") + e.what()};
        }
        failed += outcome.pass ? 0 : 1;
        std::printf("criterion %d %-28s %s  %s\n", c.id, c.name, outcome.pass ? "PASS" : "FAIL", outcome.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
