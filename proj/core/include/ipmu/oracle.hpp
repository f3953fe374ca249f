#pragma once

#include "ipmu/upgrade.hpp"

#include <cstdint>
#include <span>

namespace ipmu {

inline constexpr std::uint64_t kDefaultEnumerationLimit = 5'000'000;
inline constexpr std::size_t kMaxVertexOracleArcs = 15;

/// Thrown when an exhaustive method would exceed its size limit.
class LimitExceeded : public Error {
  public:
    LimitExceeded(std::string message, std::uint64_t required)
        : Error(std::move(message)), required_(required) {}
    std::uint64_t required() const { return required_; }

  private:
    std::uint64_t required_;
};

struct OptimalResult {
    EvaluatedSolution best;
    std::uint64_t ties = 0;      // sets within kImprovementTolerance of the optimum
    std::uint64_t explored = 0;  // C(n, p)
};

/// Evaluates every p-subset and returns the minimum; ties go to the
/// lexicographically smallest set. Refuses with `LimitExceeded` when
/// C(n, p) > limit.
OptimalResult exact_enumerate(const Evaluator& evaluator,
                              std::uint64_t limit = kDefaultEnumerationLimit);

/// Upgrade knapsack solved by enumerating the vertices of its feasible
/// region: every set of fully saturated positive-weight arcs that fits the
/// budget, plus at most one further arc filled with what is left.
/// Refuses when more than 15 arcs have positive weight.
UpgradePlan knapsack_vertex_oracle(std::span<const double> weight, std::span<const double> caps,
                                   double budget);
UpgradePlan knapsack_vertex_oracle(const ArcWeights& weights, const Instance& instance);

} // namespace ipmu
