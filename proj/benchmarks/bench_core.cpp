#include "ipmu/ipmu.hpp"

#include <benchmark/benchmark.h>

#include <map>
#include <memory>

namespace {

struct Fixture {
    ipmu::Instance instance;
    ipmu::PathCache cache;
    std::unique_ptr<ipmu::Evaluator> evaluator;
};

// One cached instance per (n, p); density 0.25, R-type, B = 100.
const Fixture& fixture(std::int32_t n, std::int32_t p) {
    static std::map<std::pair<std::int32_t, std::int32_t>, std::unique_ptr<Fixture>> cache;
    auto& slot = cache[{n, p}];
    if (!slot) {
        ipmu::GenSpec spec;
        spec.nodes = n;
        spec.density = 0.25;
        spec.medians = p;
        spec.budget = 100.0;
        spec.seed = 7;
        auto instance = ipmu::generate_instance(spec);
        slot = std::make_unique<Fixture>(Fixture{std::move(instance), {}, nullptr});
        slot->cache = ipmu::compute_path_cache(slot->instance);
        slot->evaluator = std::make_unique<ipmu::Evaluator>(slot->instance, slot->cache);
    }
    return *slot;
}

void BM_PathCache(benchmark::State& state) {
    const auto& f = fixture(static_cast<std::int32_t>(state.range(0)), 5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ipmu::compute_path_cache(f.instance));
    }
}
BENCHMARK(BM_PathCache)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_Evaluate(benchmark::State& state) {
    const auto& f = fixture(static_cast<std::int32_t>(state.range(0)), 5);
    const std::vector<ipmu::NodeId> medians{0, 7, 13, 21, 34};
    for (auto _ : state) {
        benchmark::DoNotOptimize(ipmu::evaluate(f.instance, f.cache, medians).objective);
    }
}
BENCHMARK(BM_Evaluate)->Arg(50)->Arg(100)->Arg(200);

void BM_EvaluatorObjective(benchmark::State& state) {
    const auto& f = fixture(static_cast<std::int32_t>(state.range(0)), 5);
    const std::vector<ipmu::NodeId> medians{0, 7, 13, 21, 34};
    auto& ws = f.evaluator->workspace(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(f.evaluator->objective_of(medians, ws));
    }
}
BENCHMARK(BM_EvaluatorObjective)->Arg(50)->Arg(100)->Arg(200);

void BM_RelaxEdges(benchmark::State& state) {
    const auto arcs = static_cast<std::size_t>(state.range(0));
    ipmu::Rng rng(3);
    std::vector<double> weight(arcs);
    std::vector<double> caps(arcs);
    for (std::size_t a = 0; a < arcs; ++a) {
        weight[a] = rng.unit() < 0.1 ? static_cast<double>(rng.uniform_int(1, 20)) : 0.0;
        caps[a] = rng.uniform(0.0, 100.0);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(ipmu::relax_edges(weight, caps, 100.0).gain);
    }
}
BENCHMARK(BM_RelaxEdges)->Arg(1000)->Arg(10000);

void BM_LocalSearch(benchmark::State& state) {
    const auto& f = fixture(static_cast<std::int32_t>(state.range(0)), 5);
    ipmu::Rng rng(11);
    for (auto _ : state) {
        const auto start = ipmu::grasp_construct(*f.evaluator, 0.0, rng);
        benchmark::DoNotOptimize(
            ipmu::local_search(*f.evaluator, start, ipmu::LocalSearchStrategy::BestImprovement).moves);
    }
}
BENCHMARK(BM_LocalSearch)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_Grasp(benchmark::State& state) {
    const auto& f = fixture(static_cast<std::int32_t>(state.range(0)), 5);
    ipmu::SearchConfig config;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ipmu::grasp(*f.evaluator, config).best.objective);
    }
}
BENCHMARK(BM_Grasp)->Arg(50)->Unit(benchmark::kMillisecond)->Iterations(3);

} // namespace

BENCHMARK_MAIN();
