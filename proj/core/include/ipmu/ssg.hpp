#pragma once

#include "ipmu/combinatorics.hpp"
#include "ipmu/upgrade.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ipmu {

inline constexpr std::uint64_t kDefaultSsgLimit = 2'000'000;
inline constexpr std::uint64_t kNoSuccessor = ~std::uint64_t{0};

/// Search space graph: one node per p-subset (indexed by lexicographic
/// rank), one arc from each set to the swap neighbour that best-improvement
/// local search moves to. Local optima have no successor.
struct SearchSpaceGraph {
    std::int32_t node_count = 0;  // n of the instance
    std::int32_t medians = 0;     // p
    std::vector<double> objective;
    std::vector<std::uint64_t> successor;

    std::uint64_t size() const { return objective.size(); }
    std::uint64_t edge_count() const;
    std::vector<NodeId> subset(std::uint64_t rank) const;
};

struct Basin {
    std::uint64_t root = 0;  // rank of the local optimum
    double objective = 0.0;
    std::uint64_t size = 0;
};

struct SsgStats {
    std::uint64_t local_optima = 0;
    std::vector<Basin> basins;  // ordered by objective, then root rank
    double global_value = 0.0;
    double global_basin_share = 0.0;  // fraction draining to a global optimum
};

SearchSpaceGraph build_ssg(const Evaluator& evaluator, std::uint64_t limit = kDefaultSsgLimit);

/// Root (local optimum) reached from every node, by successor chasing.
std::vector<std::uint64_t> ssg_roots(const SearchSpaceGraph& ssg);

SsgStats ssg_stats(const SearchSpaceGraph& ssg);

struct DotOptions {
    // Basins with more nodes than this are drawn as one summary node; 0 keeps all.
    std::uint64_t collapse_above = 0;
};

std::string export_dot(const SearchSpaceGraph& ssg, const DotOptions& options = {});

/// One row per local optimum: rank,objective,basin_size,medians.
std::string stats_csv(const SearchSpaceGraph& ssg, const SsgStats& stats);

} // namespace ipmu
