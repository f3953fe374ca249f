#include "ipmu/oracle.hpp"

#include "ipmu/combinatorics.hpp"
#include "ipmu/parallel.hpp"

#include <algorithm>
#include <limits>

namespace ipmu {

namespace {
constexpr std::uint64_t kBlock = 4096;
}

OptimalResult exact_enumerate(const Evaluator& evaluator, std::uint64_t limit) {
    const Instance& inst = evaluator.instance();
    const std::int32_t n = inst.node_count();
    const std::int32_t p = inst.medians();
    const std::uint64_t total = binomial(n, p);
    if (total > limit) {
        throw LimitExceeded("exhaustive search over C(" + std::to_string(n) + "," + std::to_string(p) +
                                ") = " + std::to_string(total) + " median sets exceeds the limit of " +
                                std::to_string(limit),
                            total);
    }
    const SubsetIndexer indexer(n, p);
    std::vector<double> values(total);
    const std::uint64_t blocks = (total + kBlock - 1) / kBlock;
    parallel_for(evaluator.pool(), blocks, [&](std::size_t block, std::size_t worker) {
        const std::uint64_t begin = block * kBlock;
        const std::uint64_t end = std::min(total, begin + kBlock);
        std::vector<NodeId> subset = indexer.unrank(begin);
        for (std::uint64_t r = begin; r < end; ++r) {
            values[r] = evaluator.objective_of(subset, evaluator.workspace(worker));
            next_subset(subset, n);
        }
    });

    // First minimum in rank order is the lexicographically smallest optimum.
    const auto best_it = std::min_element(values.begin(), values.end());
    const double best = *best_it;
    OptimalResult result;
    result.explored = total;
    result.ties = static_cast<std::uint64_t>(std::count_if(
        values.begin(), values.end(), [best](double v) { return !improves(best, v); }));
    result.best = evaluator.evaluate(
        indexer.unrank(static_cast<std::uint64_t>(std::distance(values.begin(), best_it))));
    return result;
}

UpgradePlan knapsack_vertex_oracle(std::span<const double> weight, std::span<const double> caps,
                                   double budget) {
    if (weight.size() != caps.size()) {
        throw Error("weight and cap vectors differ in length");
    }
    std::vector<std::size_t> items;
    for (std::size_t a = 0; a < weight.size(); ++a) {
        if (weight[a] > 0.0) {
            items.push_back(a);
        }
    }
    if (items.size() > kMaxVertexOracleArcs) {
        throw LimitExceeded("vertex oracle handles at most 15 positive-weight arcs, got " +
                                std::to_string(items.size()),
                            items.size());
    }
    const std::size_t k = items.size();
    const std::size_t masks = std::size_t{1} << k;
    std::vector<double> cap_sum(masks, 0.0);
    std::vector<double> gain_sum(masks, 0.0);

    double best_gain = -1.0;
    std::size_t best_mask = 0;
    std::size_t best_extra = k;  // k = no fractional arc
    double best_extra_amount = 0.0;
    for (std::size_t mask = 0; mask < masks; ++mask) {
        if (mask != 0) {
            const std::size_t low = static_cast<std::size_t>(__builtin_ctzll(mask));
            const std::size_t rest = mask & (mask - 1);
            cap_sum[mask] = cap_sum[rest] + caps[items[low]];
            gain_sum[mask] = gain_sum[rest] + weight[items[low]] * caps[items[low]];
        }
        if (cap_sum[mask] > budget) {
            continue;
        }
        const double left = budget - cap_sum[mask];
        if (gain_sum[mask] > best_gain) {
            best_gain = gain_sum[mask];
            best_mask = mask;
            best_extra = k;
            best_extra_amount = 0.0;
        }
        for (std::size_t e = 0; e < k; ++e) {
            if (mask & (std::size_t{1} << e)) {
                continue;
            }
            const double amount = std::min(caps[items[e]], left);
            const double gain = gain_sum[mask] + weight[items[e]] * amount;
            if (gain > best_gain) {
                best_gain = gain;
                best_mask = mask;
                best_extra = e;
                best_extra_amount = amount;
            }
        }
    }

    UpgradePlan plan;
    plan.reduction.assign(weight.size(), 0.0);
    for (std::size_t e = 0; e < k; ++e) {
        if (best_mask & (std::size_t{1} << e)) {
            plan.reduction[items[e]] = caps[items[e]];
        }
    }
    if (best_extra < k) {
        plan.reduction[items[best_extra]] = best_extra_amount;
    }
    plan.gain = std::max(best_gain, 0.0);
    return plan;
}

UpgradePlan knapsack_vertex_oracle(const ArcWeights& weights, const Instance& instance) {
    return knapsack_vertex_oracle(weights.weight, arc_caps(instance), instance.budget());
}

} // namespace ipmu
