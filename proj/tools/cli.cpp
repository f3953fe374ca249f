#include "cli.hpp"

#include "ipmu/ipmu.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

namespace ipmu::cli {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

constexpr double kRecordTolerance = 1e-6;

std::string shortest(double value) {
    char buffer[64];
    auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, end);
}

std::string fixed(double value, int digits) {
    if (!std::isfinite(value)) {
        return value > 0 ? "inf" : "nan";
    }
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.*f", digits, value);
    return buffer;
}

Json finite_or_null(double value) { return std::isfinite(value) ? Json(value) : Json(nullptr); }

std::vector<NodeId> to_labels(std::span<const NodeId> medians) {
    std::vector<NodeId> out;
    for (NodeId j : medians) {
        out.push_back(j + 1);
    }
    return out;
}

struct Context {
    Instance instance;
    PathCache cache;
    std::unique_ptr<ThreadPool> pool;
    std::unique_ptr<Evaluator> evaluator;

    Context(Instance inst, std::size_t threads) : instance(std::move(inst)) {
        const std::vector<Violation> issues = validate(instance);
        if (has_errors(issues)) {
            for (const Violation& v : issues) {
                if (v.severity == Violation::Severity::Error) {
                    throw Error("invalid instance: " + v.message);
                }
            }
        }
        if (threads == 0) {
            threads = default_thread_count();
        }
        if (threads > 1) {
            pool = std::make_unique<ThreadPool>(threads);
        }
        cache = compute_path_cache(instance, pool.get());
        evaluator = std::make_unique<Evaluator>(instance, cache, pool.get());
    }
};

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw Error("cannot write '" + path + "'");
    }
    file << text;
    if (!file) {
        throw Error("write failed for '" + path + "'");
    }
}

Json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open record '" + path + "'");
    }
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error("record '" + path + "' is not valid JSON: " + e.what());
    }
}

Json solution_fields(const Instance& instance, const EvaluatedSolution& solution) {
    Json upgrades = Json::array();
    for (ArcId a = 0; a < instance.arc_count(); ++a) {
        const double b = solution.plan.reduction[static_cast<std::size_t>(a)];
        if (b > 0.0) {
            const Arc& arc = instance.arc(a);
            upgrades.push_back(Json{{"src", arc.src + 1}, {"dst", arc.dst + 1}, {"b", b}});
        }
    }
    Json out;
    out["medians"] = to_labels(solution.medians);
    out["objective"] = solution.objective;
    out["unupgraded_cost"] = solution.base_cost;
    out["upgrades"] = std::move(upgrades);
    return out;
}

void check_record(const Json& record, const Instance& instance) {
    const double gap = record_discrepancy(record, instance);
    if (!(gap <= kRecordTolerance * std::max(1.0, std::abs(record.at("objective").get<double>())))) {
        throw std::logic_error("emitted record does not re-validate (objective gap " + shortest(gap) + ")");
    }
}

Json base_record(const std::string& path, const Instance& instance, std::string_view algorithm) {
    Json record;
    record["format"] = "ipmu-run";
    record["version"] = 1;
    record["instance"] = path;
    record["algorithm"] = algorithm;
    record["n"] = instance.node_count();
    record["m"] = instance.arc_count();
    record["p"] = instance.medians();
    record["budget"] = instance.budget();
    return record;
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
    std::optional<std::int32_t> nodes;
    std::optional<std::int64_t> arcs;
    std::optional<double> density;
    std::optional<std::int32_t> medians;
    double budget = 100.0;
    std::string type = "R";
    std::int32_t count = 1;
    std::uint64_t seed = 1;
    std::int64_t demand_min = 1;
    std::int64_t demand_max = 1;
    std::string out = ".";
    std::string grid;
};

std::string instance_file_name(const GenSpec& spec) {
    return std::string(1, kind_letter(spec.kind)) + "_n" + std::to_string(spec.nodes) + "_m" +
           std::to_string(spec.arc_count()) + "_p" + std::to_string(spec.medians) + "_B" +
           shortest(spec.budget) + "_s" + std::to_string(spec.seed) + ".ipmu";
}

// Parameter combinations for batch generation. "sota" follows the shape of
// the established benchmark (n in {20,40,60,80}, three arc counts in
// [100,500], p in {2..5}, B in {50,100}, both types); "large" the extended
// one (n in {100,200,500}, densities 0.25/0.5/0.75, p in {2,3,4,5,10}, B = 100).
std::vector<GenSpec> grid_specs(const GenerateArgs& args) {
    std::vector<GenSpec> specs;
    const auto add = [&](InstanceKind kind, std::int32_t n, std::optional<std::int64_t> m,
                         std::optional<double> density, std::int32_t p, double budget) {
        GenSpec spec;
        spec.nodes = n;
        spec.arcs = m;
        spec.density = density;
        spec.medians = p;
        spec.budget = budget;
        spec.kind = kind;
        spec.demand_min = args.demand_min;
        spec.demand_max = args.demand_max;
        specs.push_back(spec);
    };
    for (InstanceKind kind : {InstanceKind::Correlated, InstanceKind::Random}) {
        if (args.grid == "sota") {
            for (std::int32_t n : {20, 40, 60, 80}) {
                const std::int64_t gamma = static_cast<std::int64_t>(n) * (n - 1);
                const std::int64_t lo = std::max<std::int64_t>(100, n);
                const std::int64_t hi = std::min<std::int64_t>(500, gamma);
                for (std::int64_t m : {lo, (lo + hi) / 2, hi}) {
                    for (std::int32_t p : {2, 3, 4, 5}) {
                        for (double budget : {50.0, 100.0}) {
                            add(kind, n, m, std::nullopt, p, budget);
                        }
                    }
                }
            }
        } else if (args.grid == "large") {
            for (std::int32_t n : {100, 200, 500}) {
                for (double density : {0.25, 0.5, 0.75}) {
                    for (std::int32_t p : {2, 3, 4, 5, 10}) {
                        add(kind, n, std::nullopt, density, p, 100.0);
                    }
                }
            }
        } else {
            throw Error("unknown grid '" + args.grid + "' (expected sota or large)");
        }
    }
    return specs;
}

int cmd_generate(const GenerateArgs& args, std::ostream& out) {
    std::vector<GenSpec> specs;
    if (!args.grid.empty()) {
        specs = grid_specs(args);
    } else {
        if (!args.nodes || !args.medians) {
            throw Error("generate needs --n and --p (or --grid)");
        }
        if (args.arcs.has_value() == args.density.has_value()) {
            throw Error("generate needs exactly one of --m and --density");
        }
        GenSpec spec;
        spec.nodes = *args.nodes;
        spec.arcs = args.arcs;
        spec.density = args.density;
        spec.medians = *args.medians;
        spec.budget = args.budget;
        spec.kind = parse_kind(args.type);
        spec.demand_min = args.demand_min;
        spec.demand_max = args.demand_max;
        specs.push_back(spec);
    }
    if (args.count < 1) {
        throw Error("--count must be at least 1");
    }
    fs::create_directories(args.out);
    std::uint64_t seed = args.seed;
    for (GenSpec spec : specs) {
        for (std::int32_t k = 0; k < args.count; ++k) {
            spec.seed = seed++;
            const Instance instance = generate_instance(spec);
            const fs::path path = fs::path(args.out) / instance_file_name(spec);
            save_instance(instance, path.string());
            out << path.string() << '\n';
        }
    }
    return 0;
}

// ------------------------------------------------------------------- solve

struct SolveArgs {
    std::string instance;
    std::string algorithm = "grasp";
    SearchConfig config;
    std::string strategy = "best";
    std::size_t threads = 0;
    std::string out;
};

Json solve_record(const SolveArgs& args, Context& ctx) {
    Json record = base_record(args.instance, ctx.instance, args.algorithm);
    if (args.algorithm == "kh") {
        record["config"] = Json::object();
        record["seed"] = nullptr;
        const auto started = std::chrono::steady_clock::now();
        const EvaluatedSolution solution = kh_construct(*ctx.evaluator);
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
        record.update(solution_fields(ctx.instance, solution));
        record["iterations"] = 1;
        record["iterations_at_best"] = 1;
        record["wall_time_ms"] = ms;
    } else if (args.algorithm == "grasp") {
        SearchConfig config = args.config;
        config.strategy = parse_strategy(args.strategy);
        record["config"] = Json{{"alpha", config.alpha},
                                {"ls", strategy_name(config.strategy)},
                                {"max_iters", config.max_iters},
                                {"max_iters_wi", config.max_iters_without_improvement}};
        record["seed"] = config.seed;
        const SearchResult result = grasp(*ctx.evaluator, config);
        record.update(solution_fields(ctx.instance, result.best));
        record["iterations"] = result.iterations_run;
        record["iterations_at_best"] = result.iterations_at_best;
        record["wall_time_ms"] = result.wall_time_seconds * 1000.0;
    } else {
        throw Error("unknown algorithm '" + args.algorithm + "' (expected grasp or kh)");
    }
    record["optimality"] = "unknown";
    check_record(record, ctx.instance);
    return record;
}

int cmd_solve(const SolveArgs& args, std::ostream& out) {
    Context ctx(load_instance(args.instance), args.threads);
    const Json record = solve_record(args, ctx);
    write_text(args.out, record.dump(2) + "\n", out);
    return 0;
}

// ------------------------------------------------------------------- exact

struct ExactArgs {
    std::string instance;
    std::uint64_t limit = kDefaultEnumerationLimit;
    std::string compare;
    std::size_t threads = 0;
    std::string out;
};

int cmd_exact(const ExactArgs& args, std::ostream& out) {
    Context ctx(load_instance(args.instance), args.threads);
    const auto started = std::chrono::steady_clock::now();
    const OptimalResult result = exact_enumerate(*ctx.evaluator, args.limit);
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    Json record = base_record(args.instance, ctx.instance, "exact");
    record["config"] = Json{{"limit", args.limit}};
    record["seed"] = nullptr;
    record.update(solution_fields(ctx.instance, result.best));
    record["iterations"] = 1;
    record["iterations_at_best"] = 1;
    record["wall_time_ms"] = ms;
    record["optimality"] = "certified";
    record["ties"] = result.ties;
    record["explored"] = result.explored;
    check_record(record, ctx.instance);
    if (!args.compare.empty()) {
        const Json other = read_json(args.compare);
        const double heuristic = other.at("objective").get<double>();
        const double dev = deviation_percent(heuristic, result.best.objective);
        record["compare"] = Json{{"record", args.compare},
                                 {"algorithm", other.value("algorithm", "")},
                                 {"objective", heuristic},
                                 {"deviation_pct", finite_or_null(dev)},
                                 {"deviation", fixed(dev, 3) + "%"}};
    }
    write_text(args.out, record.dump(2) + "\n", out);
    return 0;
}

// --------------------------------------------------------------------- ssg

struct SsgArgs {
    std::string instance;
    std::uint64_t limit = kDefaultSsgLimit;
    std::string dot;
    std::uint64_t collapse = 0;
    std::size_t threads = 0;
    std::string out;
};

int cmd_ssg(const SsgArgs& args, std::ostream& out, std::ostream& err) {
    Context ctx(load_instance(args.instance), args.threads);
    const SearchSpaceGraph ssg = build_ssg(*ctx.evaluator, args.limit);
    const SsgStats stats = ssg_stats(ssg);
    write_text(args.out, stats_csv(ssg, stats), out);
    if (!args.dot.empty()) {
        write_text(args.dot, export_dot(ssg, DotOptions{args.collapse}), out);
    }
    err << "ssg: " << ssg.size() << " sets, " << ssg.edge_count() << " edges, " << stats.local_optima
        << " local optima, global " << shortest(stats.global_value) << " (basin share "
        << fixed(stats.global_basin_share, 4) << ")\n";
    return 0;
}

// ------------------------------------------------------------------- bench

struct BenchArgs {
    std::string directory;
    std::string algorithms = "grasp,kh";
    SearchConfig config;
    std::string strategy = "best";
    std::uint64_t limit = kDefaultEnumerationLimit;
    std::size_t threads = 0;
    std::string out;
    std::string per_instance;
};

struct BenchRun {
    std::string file;
    std::string type;
    std::string algorithm;
    bool ok = false;
    std::string error;
    double objective = 0.0;
    double seconds = 0.0;
};

std::string type_of(const fs::path& file) {
    const std::string name = file.filename().string();
    if (name.size() >= 2 && (name[0] == 'P' || name[0] == 'R') && name[1] == '_') {
        return std::string(1, name[0]);
    }
    return "?";
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
    const std::vector<std::string> algorithms = split_list(args.algorithms);
    for (const std::string& a : algorithms) {
        if (a != "grasp" && a != "kh" && a != "exact") {
            throw Error("unknown algorithm '" + a + "' in --algorithms");
        }
    }
    if (!fs::is_directory(args.directory)) {
        throw Error("'" + args.directory + "' is not a directory");
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(args.directory)) {
        if (entry.is_regular_file() && entry.path().extension() == ".ipmu") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        throw Error("no .ipmu files in '" + args.directory + "'");
    }
    SearchConfig config = args.config;
    config.strategy = parse_strategy(args.strategy);
    config.validate();

    std::vector<BenchRun> runs;
    bool failures = false;
    for (const fs::path& file : files) {
        std::unique_ptr<Context> ctx;
        std::string load_error;
        try {
            ctx = std::make_unique<Context>(load_instance(file.string()), args.threads);
        } catch (const std::exception& e) {
            load_error = e.what();
        }
        for (const std::string& algorithm : algorithms) {
            BenchRun run;
            run.file = file.filename().string();
            run.type = type_of(file);
            run.algorithm = algorithm;
            if (!ctx) {
                run.error = load_error;
            } else {
                try {
                    const auto started = std::chrono::steady_clock::now();
                    if (algorithm == "grasp") {
                        run.objective = grasp(*ctx->evaluator, config).best.objective;
                    } else if (algorithm == "kh") {
                        run.objective = kh_construct(*ctx->evaluator).objective;
                    } else {
                        run.objective = exact_enumerate(*ctx->evaluator, args.limit).best.objective;
                    }
                    run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
                    run.ok = true;
                } catch (const std::exception& e) {
                    run.error = e.what();
                }
            }
            if (!run.ok) {
                failures = true;
                err << "bench: " << run.file << " [" << run.algorithm << "]: " << run.error << '\n';
            }
            runs.push_back(std::move(run));
        }
    }

    // Best known and certified optimum per instance, pooled over the batch.
    std::map<std::string, double> best_known;
    std::map<std::string, double> optimum;
    for (const BenchRun& run : runs) {
        if (!run.ok) {
            continue;
        }
        auto [it, inserted] = best_known.emplace(run.file, run.objective);
        if (!inserted) {
            it->second = std::min(it->second, run.objective);
        }
        if (run.algorithm == "exact") {
            optimum[run.file] = run.objective;
        }
    }
    const auto matches = [](double value, double reference) { return !improves(reference, value); };

    std::string detail = "instance,type,algorithm,status,objective,time_s,dev_pct,best,optimal\n";
    struct Aggregate {
        std::size_t count = 0;
        double objective = 0.0;
        double seconds = 0.0;
        double deviation = 0.0;
        std::size_t best = 0;
        std::size_t optimal = 0;
        bool has_optimum = false;
    };
    std::map<std::pair<std::string, std::string>, Aggregate> groups;
    for (const BenchRun& run : runs) {
        if (!run.ok) {
            detail += run.file + ',' + run.type + ',' + run.algorithm + ",error,,,,,\n";
            continue;
        }
        const double reference = best_known.at(run.file);
        const double dev = deviation_percent(run.objective, reference);
        const bool is_best = matches(run.objective, reference);
        const auto opt = optimum.find(run.file);
        const bool is_optimal = opt != optimum.end() && matches(run.objective, opt->second);
        detail += run.file + ',' + run.type + ',' + run.algorithm + ",ok," + shortest(run.objective) +
                  ',' + fixed(run.seconds, 6) + ',' + fixed(dev, 6) + ',' + (is_best ? "1" : "0") + ',' +
                  (opt == optimum.end() ? "" : (is_optimal ? "1" : "0")) + '\n';
        Aggregate& g = groups[{run.type, run.algorithm}];
        ++g.count;
        g.objective += run.objective;
        g.seconds += run.seconds;
        g.deviation += dev;
        g.best += is_best ? 1 : 0;
        g.optimal += is_optimal ? 1 : 0;
        g.has_optimum = g.has_optimum || opt != optimum.end();
    }

    std::string table = "type,algorithm,instances,avg_objective,avg_time_s,avg_dev_pct,best_count,optimal_count\n";
    for (const auto& [key, g] : groups) {
        const auto count = static_cast<double>(g.count);
        table += key.first + ',' + key.second + ',' + std::to_string(g.count) + ',' +
                 shortest(g.objective / count) + ',' + fixed(g.seconds / count, 6) + ',' +
                 fixed(g.deviation / count, 6) + ',' + std::to_string(g.best) + ',' +
                 (g.has_optimum ? std::to_string(g.optimal) : std::string()) + '\n';
    }
    write_text(args.out, table, out);
    if (!args.per_instance.empty()) {
        write_text(args.per_instance, detail, out);
    }
    return failures ? 1 : 0;
}

void add_search_options(CLI::App* cmd, SearchConfig& config, std::string& strategy) {
    cmd->add_option("--alpha", config.alpha, "RCL greediness in [0,1]")
        ->default_val(0.51)
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--ls", strategy, "Local search strategy: best or first")->default_val("best");
    cmd->add_option("--max-iters", config.max_iters, "Maximum GRASP iterations")->default_val(100);
    cmd->add_option("--max-iters-wi", config.max_iters_without_improvement,
                    "Maximum iterations without improvement")
        ->default_val(29);
    cmd->add_option("--seed", config.seed, "Random seed")->default_val(0);
}

} // namespace

double deviation_percent(double heuristic, double optimum) {
    if (!improves(optimum, heuristic)) {
        return 0.0;
    }
    if (optimum == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return 100.0 * (heuristic - optimum) / std::abs(optimum);
}

double record_discrepancy(const nlohmann::ordered_json& record, const Instance& instance) {
    std::vector<NodeId> medians;
    for (const auto& label : record.at("medians")) {
        medians.push_back(label.get<NodeId>() - 1);
    }
    std::vector<double> reduction(static_cast<std::size_t>(instance.arc_count()), 0.0);
    for (const auto& up : record.at("upgrades")) {
        const auto arc = instance.find_arc(up.at("src").get<NodeId>() - 1, up.at("dst").get<NodeId>() - 1);
        if (!arc) {
            throw Error("record upgrades an arc that does not exist");
        }
        reduction[static_cast<std::size_t>(*arc)] = up.at("b").get<double>();
    }
    double total = 0.0;
    for (double b : reduction) {
        total += b;
    }
    if (total > instance.budget() + 1e-9) {
        throw Error("record spends more than the budget");
    }
    const PathCache cache = compute_path_cache(instance);
    const double recomputed = objective_with_plan(instance, cache, medians, reduction);
    return std::abs(recomputed - record.at("objective").get<double>());
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Induced p-median with upgrades: generation, heuristics, exact search and landscape analysis",
                 "ipmu"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Write random instances");
    generate->add_option("--n", gen.nodes, "Node count")->check(CLI::Range(2, 1000000));
    auto* m_opt = generate->add_option("--m", gen.arcs, "Arc count");
    generate->add_option("--density", gen.density, "Arc count as a fraction of n(n-1)")
        ->check(CLI::Range(0.0, 1.0))
        ->excludes(m_opt);
    generate->add_option("--p", gen.medians, "Medians to select (1 <= p < n)")->check(CLI::PositiveNumber);
    generate->add_option("--budget", gen.budget, "Upgrade budget B")->default_val(100.0);
    generate->add_option("--type", gen.type, "P (correlated) or R (random)")->default_val("R");
    generate->add_option("--count", gen.count, "Instances per parameter combination")->default_val(1);
    generate->add_option("--seed", gen.seed, "Seed of the first instance; later ones add 1")->default_val(1);
    generate->add_option("--demand-min", gen.demand_min, "Smallest demand")->default_val(1);
    generate->add_option("--demand-max", gen.demand_max, "Largest demand")->default_val(1);
    generate->add_option("--grid", gen.grid, "Batch grid: sota or large");
    generate->add_option("--out", gen.out, "Output directory")->default_val(".");
    std::size_t gen_threads = 0;
    generate->add_option("--threads", gen_threads, "Accepted for uniformity; generation is serial");

    SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "Run GRASP or the greedy baseline on one instance");
    solve_cmd->add_option("instance", solve.instance, "Instance file")->required();
    solve_cmd->add_option("--algorithm", solve.algorithm, "grasp or kh")->default_val("grasp");
    add_search_options(solve_cmd, solve.config, solve.strategy);
    solve_cmd->add_option("--threads", solve.threads, "Worker threads (0 = all cores)")->default_val(0);
    solve_cmd->add_option("--out", solve.out, "Record file (default stdout)");

    ExactArgs exact;
    auto* exact_cmd = app.add_subcommand("exact", "Certify the optimum by enumerating every median set");
    exact_cmd->add_option("instance", exact.instance, "Instance file")->required();
    exact_cmd->add_option("--limit", exact.limit, "Largest C(n,p) to enumerate")
        ->default_val(kDefaultEnumerationLimit);
    exact_cmd->add_option("--compare", exact.compare, "Heuristic record to compute the deviation of");
    exact_cmd->add_option("--threads", exact.threads, "Worker threads (0 = all cores)")->default_val(0);
    exact_cmd->add_option("--out", exact.out, "Record file (default stdout)");
    std::uint64_t exact_seed = 0;
    exact_cmd->add_option("--seed", exact_seed, "Accepted for uniformity; enumeration is deterministic");

    SsgArgs ssg;
    auto* ssg_cmd = app.add_subcommand("ssg", "Build the search space graph and report its basins");
    ssg_cmd->add_option("instance", ssg.instance, "Instance file")->required();
    ssg_cmd->add_option("--limit", ssg.limit, "Largest C(n,p) to build")->default_val(kDefaultSsgLimit);
    ssg_cmd->add_option("--dot", ssg.dot, "Write a Graphviz rendering here");
    ssg_cmd->add_option("--collapse", ssg.collapse, "Draw basins larger than this as one node")->default_val(0);
    ssg_cmd->add_option("--threads", ssg.threads, "Worker threads (0 = all cores)")->default_val(0);
    ssg_cmd->add_option("--out", ssg.out, "Basin CSV (default stdout)");
    std::uint64_t ssg_seed = 0;
    ssg_cmd->add_option("--seed", ssg_seed, "Accepted for uniformity; construction is deterministic");

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "Run algorithms over a directory of instances");
    bench_cmd->add_option("directory", bench.directory, "Directory of .ipmu files")->required();
    bench_cmd->add_option("--algorithms", bench.algorithms, "Comma list of grasp, kh, exact")
        ->default_val("grasp,kh");
    add_search_options(bench_cmd, bench.config, bench.strategy);
    bench_cmd->add_option("--limit", bench.limit, "Enumeration limit for exact")->default_val(kDefaultEnumerationLimit);
    bench_cmd->add_option("--threads", bench.threads, "Worker threads (0 = all cores)")->default_val(0);
    bench_cmd->add_option("--out", bench.out, "Aggregate CSV (default stdout)");
    bench_cmd->add_option("--per-instance", bench.per_instance, "Per-run CSV");

    std::vector<const char*> argv;
    argv.push_back("ipmu");
    for (const std::string& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*generate) {
            return cmd_generate(gen, out);
        }
        if (*solve_cmd) {
            return cmd_solve(solve, out);
        }
        if (*exact_cmd) {
            return cmd_exact(exact, out);
        }
        if (*ssg_cmd) {
            return cmd_ssg(ssg, out, err);
        }
        if (*bench_cmd) {
            return cmd_bench(bench, out, err);
        }
    } catch (const LimitExceeded& e) {
        err << "ipmu: refused: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        err << "ipmu: error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

} // namespace ipmu::cli
