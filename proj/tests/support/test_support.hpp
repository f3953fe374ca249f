#pragma once

#include "ipmu/ipmu.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <numeric>
#include <vector>

namespace ipmu::testing {

inline Arc make_arc(NodeId src, NodeId dst, double time, double cost, double cap) {
    Arc a;
    a.src = src;
    a.dst = dst;
    a.time = time;
    a.cost = cost;
    a.cap = cap;
    return a;
}

/// Three nodes on a bidirectional line 1-2-3 (0-based 0-1-2): the 1-2 arcs
/// have time 1, cost 2, cap 2; the 2-3 arcs time 1, cost 4, cap 4. Unit
/// demands, p = 1, B = 3.
inline Instance line3(double budget = 3.0) {
    std::vector<Arc> arcs{
        make_arc(0, 1, 1, 2, 2), make_arc(1, 0, 1, 2, 2),
        make_arc(1, 2, 1, 4, 4), make_arc(2, 1, 1, 4, 4),
    };
    return Instance(3, std::move(arcs), {1, 1, 1}, 1, budget);
}

/// Five-node example A..E (ids 0..4) with B = 2, u = c2, unit demands, p = 2.
/// Medians {A, B}: C is served through B -> C (cost 3), D and E through
/// A -> E (cost 3, shared) and E -> D (cost 2). The closing arcs C -> A and
/// D -> B make the graph strongly connected but are slow and expensive.
inline Instance worked_example() {
    enum : NodeId { A, B, C, D, E };
    std::vector<Arc> arcs{
        make_arc(A, E, 1, 3, 3),
        make_arc(E, D, 1, 2, 2),
        make_arc(B, C, 1, 3, 3),
        make_arc(C, A, 10, 10, 10),
        make_arc(D, B, 10, 10, 10),
    };
    return Instance(5, std::move(arcs), {1, 1, 1, 1, 1}, 2, 2.0);
}

/// Small random instance for property tests.
inline Instance random_instance(Rng& rng, std::int32_t min_n = 4, std::int32_t max_n = 9) {
    GenSpec spec;
    spec.nodes = static_cast<std::int32_t>(rng.uniform_int(min_n, max_n));
    const std::int64_t gamma = static_cast<std::int64_t>(spec.nodes) * (spec.nodes - 1);
    spec.arcs = rng.uniform_int(spec.nodes, gamma);
    spec.medians = static_cast<std::int32_t>(rng.uniform_int(1, std::min<std::int64_t>(3, spec.nodes - 1)));
    spec.budget = rng.uniform(0.0, 150.0);
    spec.kind = rng.index(2) == 0 ? InstanceKind::Correlated : InstanceKind::Random;
    spec.demand_min = static_cast<std::int64_t>(rng.index(2));
    spec.demand_max = spec.demand_min + static_cast<std::int64_t>(rng.index(4));
    spec.seed = rng();
    return generate_instance(spec);
}

/// Instance plus everything needed to evaluate it.
struct Solved {
    explicit Solved(Instance inst, ThreadPool* pool = nullptr)
        : instance(std::move(inst)), cache(compute_path_cache(instance, pool)),
          evaluator(std::make_unique<Evaluator>(instance, cache, pool)) {}

    Instance instance;
    PathCache cache;
    std::unique_ptr<Evaluator> evaluator;
};

/// Brute-force fastest path: every simple path from source to client, the
/// minimum time, and among those of minimum time the minimum cost.
struct BrutePath {
    double time = std::numeric_limits<double>::infinity();
    double cost = std::numeric_limits<double>::infinity();
};

inline BrutePath brute_force_path(const Instance& instance, NodeId source, NodeId client) {
    BrutePath best;
    if (source == client) {
        return {0.0, 0.0};
    }
    std::vector<char> on_path(static_cast<std::size_t>(instance.node_count()), 0);
    std::function<void(NodeId, double, double)> dfs = [&](NodeId v, double t, double c) {
        if (v == client) {
            const bool better = t < best.time - 1e-9 || (std::abs(t - best.time) <= 1e-9 && c < best.cost);
            if (better) {
                best = {t, c};
            }
            return;
        }
        on_path[static_cast<std::size_t>(v)] = 1;
        for (ArcId id : instance.out_arcs(v)) {
            const Arc& a = instance.arc(id);
            if (!on_path[static_cast<std::size_t>(a.dst)]) {
                dfs(a.dst, t + a.time, c + a.cost);
            }
        }
        on_path[static_cast<std::size_t>(v)] = 0;
    };
    dfs(source, 0.0, 0.0);
    return best;
}

/// All p-subsets of {0..n-1}, by plain recursion (independent of SubsetIndexer).
inline std::vector<std::vector<NodeId>> all_subsets(std::int32_t n, std::int32_t p) {
    std::vector<std::vector<NodeId>> out;
    std::vector<NodeId> current;
    std::function<void(NodeId)> rec = [&](NodeId next) {
        if (static_cast<std::int32_t>(current.size()) == p) {
            out.push_back(current);
            return;
        }
        for (NodeId v = next; v < n; ++v) {
            current.push_back(v);
            rec(v + 1);
            current.pop_back();
        }
    };
    rec(0);
    return out;
}

/// Every swap neighbour of `medians`, evaluated with the reference `evaluate`.
inline std::vector<std::pair<std::vector<NodeId>, double>> swap_neighbours(
    const Instance& instance, const PathCache& cache, std::span<const NodeId> medians) {
    std::vector<std::pair<std::vector<NodeId>, double>> out;
    for (NodeId removed : medians) {
        for (NodeId added = 0; added < instance.node_count(); ++added) {
            if (std::find(medians.begin(), medians.end(), added) != medians.end()) {
                continue;
            }
            std::vector<NodeId> s;
            for (NodeId j : medians) {
                if (j != removed) {
                    s.push_back(j);
                }
            }
            s.push_back(added);
            std::sort(s.begin(), s.end());
            out.emplace_back(s, evaluate(instance, cache, s).objective);
        }
    }
    return out;
}

inline std::vector<NodeId> nodes(std::initializer_list<NodeId> one_based) {
    std::vector<NodeId> out;
    for (NodeId v : one_based) {
        out.push_back(v - 1);
    }
    return out;
}

} // namespace ipmu::testing
