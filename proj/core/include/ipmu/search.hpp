#pragma once

#include "ipmu/common.hpp"
#include "ipmu/rng.hpp"
#include "ipmu/upgrade.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace ipmu {

enum class LocalSearchStrategy { BestImprovement, FirstImprovement };

std::string_view strategy_name(LocalSearchStrategy strategy);
LocalSearchStrategy parse_strategy(std::string_view text);

/// GRASP parameters. Defaults are the tuned values (alpha 0.51, best
/// improvement, 100 iterations, 29 without improvement).
struct SearchConfig {
    double alpha = 0.51;
    LocalSearchStrategy strategy = LocalSearchStrategy::BestImprovement;
    std::int32_t max_iters = 100;
    std::int32_t max_iters_without_improvement = 29;
    std::uint64_t seed = 0;

    /// Throws `Error` if a field is out of range.
    void validate() const;
};

struct IterationRecord {
    double constructed = 0.0;
    double improved = 0.0;
};

struct SearchResult {
    EvaluatedSolution best;
    std::int32_t iterations_run = 0;
    std::int32_t iterations_at_best = 0;
    double wall_time_seconds = 0.0;
    std::vector<IterationRecord> trace;
};

struct LocalSearchResult {
    EvaluatedSolution solution;
    std::int32_t moves = 0;
    std::vector<double> trajectory;  // objective after the start and each accepted move
};

/// Greedy median-by-median construction (Kuehn-Hamburger): each step adds the
/// node minimizing F(S + i), ties to the smaller id.
EvaluatedSolution kh_construct(const Evaluator& evaluator);

/// Randomized greedy construction with a restricted candidate list
/// {i : F(S + i) <= f_max + alpha (f_min - f_max)}. Returns ascending ids.
std::vector<NodeId> grasp_construct(const Evaluator& evaluator, double alpha, Rng& rng);

/// Number of medians that must change to turn one set into the other.
std::int32_t hamming(std::span<const NodeId> a, std::span<const NodeId> b);

/// The move chosen from S under best improvement: minimum F over all swaps,
/// scanning removed ids then added ids ascending, first strict minimum kept.
/// Empty when no swap improves on `current` by more than the tolerance.
struct Swap {
    NodeId removed = kNoNode;
    NodeId added = kNoNode;
    double objective = std::numeric_limits<double>::infinity();
};

/// Swap local search from `start` (|start| = p) to a local optimum.
LocalSearchResult local_search(const Evaluator& evaluator, std::span<const NodeId> start,
                               LocalSearchStrategy strategy);

/// Multi-start GRASP: construction followed by local search, until the
/// iteration or no-improvement limit is exceeded.
SearchResult grasp(const Evaluator& evaluator, const SearchConfig& config);

/// Best-improvement step selection over an arbitrary objective oracle,
/// shared by local search and search-space-graph construction so that both
/// follow identical trajectories. `objective(removed, added)` returns F of
/// the swapped set.
std::optional<Swap> select_best_swap(std::span<const NodeId> medians, std::int32_t node_count,
                                     double current,
                                     const std::function<double(NodeId, NodeId)>& objective);

} // namespace ipmu
