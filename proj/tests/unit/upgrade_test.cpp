#include "test_support.hpp"

#include <doctest.h>

#include <numeric>

using namespace ipmu;
using ipmu::testing::line3;
using ipmu::testing::make_arc;
using ipmu::testing::Solved;

namespace {

// Served cost recomputed straight from path_arcs, without the cache's
// accumulated C2 or the arc weights.
double served_cost_from_paths(const Instance& instance, const PathCache& cache, const Assignment& a,
                              std::span<const double> reduction) {
    double total = 0.0;
    for (NodeId i = 0; i < instance.node_count(); ++i) {
        double path = 0.0;
        for (ArcId id : path_arcs(cache, instance, i, a.serving[static_cast<std::size_t>(i)])) {
            path += instance.arc(id).cost - reduction[static_cast<std::size_t>(id)];
        }
        total += instance.demand(i) * path;
    }
    return total;
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

} // namespace

TEST_SUITE("upgrade") {

TEST_CASE("line3 assignment prefers the cheaper of two equally fast medians") {
    const Solved s(line3());
    const Assignment a = assign(s.cache, std::vector<NodeId>{0, 2});
    CHECK(a.serving == std::vector<NodeId>{0, 0, 2});
    CHECK(assign(s.cache, std::vector<NodeId>{1}).serving == std::vector<NodeId>{1, 1, 1});
}

TEST_CASE("identical labels go to the smaller median id") {
    // Node 1 is one unit of time and cost away from both 0 and 2.
    const Instance instance(3,
                            {make_arc(0, 1, 1, 1, 1), make_arc(1, 0, 1, 1, 1), make_arc(2, 1, 1, 1, 1),
                             make_arc(1, 2, 1, 1, 1)},
                            {1, 1, 1}, 2, 0);
    const PathCache cache = compute_path_cache(instance);
    CHECK(assign(cache, std::vector<NodeId>{0, 2}).serving[1] == 0);
    CHECK(assign(cache, std::vector<NodeId>{2, 0}).serving[1] == 0);
}

TEST_CASE("line3 arc weights") {
    const Solved s(line3());
    const ArcWeights w = arc_weights(s.cache, assign(s.cache, std::vector<NodeId>{1}), s.instance);
    CHECK(w.weight == std::vector<double>{0, 1, 1, 0});
    const ArcWeights w1 = arc_weights(s.cache, assign(s.cache, std::vector<NodeId>{0}), s.instance);
    CHECK(w1.weight == std::vector<double>{2, 0, 1, 0});
}

TEST_CASE("arc weights agree with path membership") {
    Rng rng(31);
    for (int k = 0; k < 40; ++k) {
        const Solved s(ipmu::testing::random_instance(rng));
        const auto medians = random_subset(rng, s.instance.node_count(), s.instance.medians());
        const Assignment a = assign(s.cache, medians);
        const ArcWeights w = arc_weights(s.cache, a, s.instance);
        std::vector<double> expected(static_cast<std::size_t>(s.instance.arc_count()), 0.0);
        for (NodeId i = 0; i < s.instance.node_count(); ++i) {
            for (ArcId id : path_arcs(s.cache, s.instance, i, a.serving[static_cast<std::size_t>(i)])) {
                expected[static_cast<std::size_t>(id)] += s.instance.demand(i);
            }
        }
        CHECK(w.weight == expected);
    }
}

TEST_CASE("relax_edges fills the heaviest arcs first") {
    const UpgradePlan plan = relax_edges(std::vector<double>{2, 1}, std::vector<double>{2, 4}, 3);
    CHECK(plan.reduction == std::vector<double>{2, 1});
    CHECK(plan.gain == 5.0);

    const UpgradePlan none = relax_edges(std::vector<double>{2, 1}, std::vector<double>{2, 4}, 0);
    CHECK(none.reduction == std::vector<double>{0, 0});
    CHECK(none.gain == 0.0);

    // Equal weights: smaller id first. Zero weight: nothing.
    const UpgradePlan tie = relax_edges(std::vector<double>{1, 1, 0}, std::vector<double>{3, 3, 3}, 4);
    CHECK(tie.reduction == std::vector<double>{3, 1, 0});
}

TEST_CASE("line3 single median objective") {
    const Solved s(line3());
    const EvaluatedSolution e = evaluate(s.instance, s.cache, std::vector<NodeId>{1});
    CHECK(e.base_cost == 6.0);
    CHECK(e.plan.reduction == std::vector<double>{0, 2, 1, 0});
    CHECK(e.objective == 3.0);
    CHECK(evaluate(s.instance, s.cache, std::vector<NodeId>{0}).objective == 3.0);
    CHECK(evaluate(s.instance, s.cache, std::vector<NodeId>{2}).objective == 4.0);
}

TEST_CASE("worked example") {
    const Solved s(ipmu::testing::worked_example());
    const EvaluatedSolution e = evaluate(s.instance, s.cache, std::vector<NodeId>{0, 1});
    const ArcId ae = *s.instance.find_arc(0, 4);
    CHECK(arc_weights(s.cache, e.assignment, s.instance).weight[static_cast<std::size_t>(ae)] == 2.0);
    CHECK(e.plan.reduction[static_cast<std::size_t>(ae)] == 2.0);
    CHECK(e.base_cost == 11.0);
    CHECK(e.objective == 7.0);
}

TEST_CASE("evaluate rejects malformed median sets") {
    const Solved s(line3());
    CHECK_THROWS_AS(evaluate(s.instance, s.cache, std::vector<NodeId>{}), Error);
    CHECK_THROWS_AS(evaluate(s.instance, s.cache, std::vector<NodeId>{3}), Error);
    CHECK_THROWS_AS(evaluate(s.instance, s.cache, std::vector<NodeId>{0, 1}), Error);
    const Solved five(ipmu::testing::worked_example());
    CHECK_THROWS_AS(evaluate(five.instance, five.cache, std::vector<NodeId>{1, 1}), Error);
}

TEST_CASE("zero budget objective is the plain served cost") {
    Rng rng(41);
    for (int k = 0; k < 40; ++k) {
        const Solved s(ipmu::testing::random_instance(rng).with_budget(0.0));
        const auto medians = random_subset(rng, s.instance.node_count(), s.instance.medians());
        const EvaluatedSolution e = evaluate(s.instance, s.cache, medians);
        double expected = 0.0;
        for (NodeId i = 0; i < s.instance.node_count(); ++i) {
            expected += s.instance.demand(i) * s.cache.cost(i, e.assignment.serving[static_cast<std::size_t>(i)]);
        }
        CHECK(e.objective == doctest::Approx(expected).epsilon(1e-12));
        CHECK(e.plan.gain == 0.0);
    }
}

TEST_CASE("plans are feasible, saturate in weight order and match the path recomputation") {
    Rng rng(43);
    for (int k = 0; k < 200; ++k) {
        const Solved s(ipmu::testing::random_instance(rng));
        const auto medians = random_subset(rng, s.instance.node_count(), s.instance.medians());
        const EvaluatedSolution e = evaluate(s.instance, s.cache, medians);
        const ArcWeights w = arc_weights(s.cache, e.assignment, s.instance);
        double spent = 0.0;
        for (ArcId a = 0; a < s.instance.arc_count(); ++a) {
            const double b = e.plan.reduction[static_cast<std::size_t>(a)];
            CHECK(b >= 0.0);
            CHECK(b <= s.instance.arc(a).cap);
            spent += b;
            for (ArcId other = 0; other < s.instance.arc_count(); ++other) {
                if (w.weight[static_cast<std::size_t>(a)] > w.weight[static_cast<std::size_t>(other)] &&
                    e.plan.reduction[static_cast<std::size_t>(other)] > 0) {
                    CHECK(b == s.instance.arc(a).cap);
                }
            }
        }
        CHECK(spent <= s.instance.budget() + 1e-9);
        const double recomputed = served_cost_from_paths(s.instance, s.cache, e.assignment, e.plan.reduction);
        CHECK(e.objective == doctest::Approx(recomputed).epsilon(1e-9));
        CHECK(objective_with_plan(s.instance, s.cache, medians, e.plan.reduction) ==
              doctest::Approx(e.objective).epsilon(1e-9));
    }
}

TEST_CASE("fast evaluation is bit-identical to the reference") {
    Rng rng(47);
    for (int k = 0; k < 100; ++k) {
        const Solved s(ipmu::testing::random_instance(rng, 4, 14));
        const Evaluator& ev = *s.evaluator;
        const auto medians = random_subset(rng, s.instance.node_count(), s.instance.medians());
        const double reference = evaluate(s.instance, s.cache, medians).objective;
        CHECK(ev.objective_of(medians, ev.workspace(0)) == reference);
        CHECK(ev.evaluate(medians).objective == reference);

        // Incremental values through the two-best structure.
        const MedianState state(ev, medians);
        for (NodeId removed : medians) {
            for (NodeId added = 0; added < s.instance.node_count(); ++added) {
                if (state.contains(added)) {
                    continue;
                }
                std::vector<NodeId> swapped;
                for (NodeId j : medians) {
                    if (j != removed) {
                        swapped.push_back(j);
                    }
                }
                swapped.push_back(added);
                std::sort(swapped.begin(), swapped.end());
                CHECK(state.objective_with_swap(removed, added, ev.workspace(0)) ==
                      evaluate(s.instance, s.cache, swapped).objective);
            }
        }
        if (static_cast<std::int32_t>(medians.size()) > 1) {
            std::vector<NodeId> partial(medians.begin(), medians.end() - 1);
            const MedianState part(ev, partial);
            for (NodeId added = 0; added < s.instance.node_count(); ++added) {
                if (part.contains(added)) {
                    continue;
                }
                std::vector<NodeId> grown = partial;
                grown.push_back(added);
                std::sort(grown.begin(), grown.end());
                CHECK(part.objective_with_added(added, ev.workspace(0)) ==
                      evaluate(s.instance, s.cache, grown).objective);
            }
        }
    }
}

TEST_CASE("budget monotonicity") {
    Rng rng(53);
    for (int k = 0; k < 200; ++k) {
        const Instance base = ipmu::testing::random_instance(rng);
        const PathCache cache = compute_path_cache(base);
        const auto medians = random_subset(rng, base.node_count(), base.medians());
        const double b1 = rng.uniform(0.0, 100.0);
        const double b2 = b1 + rng.uniform(0.0, 100.0);
        CHECK(evaluate(base.with_budget(b2), cache, medians).objective <=
              evaluate(base.with_budget(b1), cache, medians).objective);
    }
}

TEST_CASE("another median never slows a client down") {
    Rng rng(59);
    for (int k = 0; k < 200; ++k) {
        const Instance base = ipmu::testing::random_instance(rng);
        if (base.medians() < 2) {
            continue;
        }
        const PathCache cache = compute_path_cache(base);
        const auto smaller = random_subset(rng, base.node_count(), base.medians() - 1);
        const Assignment before = assign(cache, smaller);
        for (NodeId i = 0; i < base.node_count(); ++i) {
            if (std::find(smaller.begin(), smaller.end(), i) != smaller.end()) {
                continue;
            }
            std::vector<NodeId> grown = smaller;
            grown.push_back(i);
            const Assignment after = assign(cache, grown);
            for (NodeId c = 0; c < base.node_count(); ++c) {
                CHECK(cache.time(c, after.serving[static_cast<std::size_t>(c)]) <=
                      cache.time(c, before.serving[static_cast<std::size_t>(c)]));
            }
        }
    }
}

TEST_CASE("another median can raise the unupgraded cost") {
    // Node 2 is reached from 0 slowly but cheaply; opening 1 gives it a
    // faster, dearer route, and service follows time.
    const Instance inst(3,
                        {make_arc(0, 2, 5, 1, 1), make_arc(1, 2, 1, 9, 9), make_arc(2, 0, 1, 1, 1),
                         make_arc(2, 1, 1, 1, 1)},
                        {0, 0, 1}, 2, 0);
    const PathCache cache = compute_path_cache(inst);
    CHECK(evaluate(inst, cache, std::vector<NodeId>{0}).objective == 1.0);
    CHECK(evaluate(inst, cache, std::vector<NodeId>{0, 1}).objective == 9.0);
}

} // TEST_SUITE
