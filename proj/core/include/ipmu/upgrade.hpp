#pragma once

#include "ipmu/common.hpp"
#include "ipmu/instance.hpp"
#include "ipmu/paths.hpp"

#include <atomic>
#include <memory>
#include <span>
#include <vector>

namespace ipmu {

class ThreadPool;

/// Serving median per client. A client prefers the median with the smaller
/// fastest-path time, then the smaller path cost, then the smaller id.
struct Assignment {
    std::vector<NodeId> serving;
};

/// Per-arc demand-weighted usage: the sum of demands of the clients whose
/// served path contains the arc. This is the value density of upgrading it.
struct ArcWeights {
    std::vector<double> weight;
};

struct UpgradePlan {
    std::vector<double> reduction;  // b per arc id
    double gain = 0.0;              // sum of weight * reduction
};

struct EvaluatedSolution {
    std::vector<NodeId> medians;  // ascending
    Assignment assignment;
    UpgradePlan plan;
    double base_cost = 0.0;  // demand-weighted served cost before upgrades
    double objective = 0.0;
};

/// True when `client` strictly prefers median `a` over `b`.
inline bool prefers(const PathCache& cache, NodeId client, NodeId a, NodeId b) {
    const double ta = cache.time(client, a);
    const double tb = cache.time(client, b);
    if (ta != tb) {
        return ta < tb;
    }
    const double ca = cache.cost(client, a);
    const double cb = cache.cost(client, b);
    if (ca != cb) {
        return ca < cb;
    }
    return a < b;
}

Assignment assign(const PathCache& cache, std::span<const NodeId> medians);

ArcWeights arc_weights(const PathCache& cache, const Assignment& assignment,
                       const Instance& instance);

/// Bounded fractional knapsack: arcs by weight descending (ties by ascending
/// id) each take min(remaining budget, cap). Arcs of weight zero get nothing.
UpgradePlan relax_edges(std::span<const double> weight, std::span<const double> caps,
                        double budget);
UpgradePlan relax_edges(const ArcWeights& weights, const Instance& instance);

/// Full evaluation of a (possibly partial) median set with 1 <= |S| <= p.
/// Throws `Error` on an empty set, repeated or out-of-range ids.
EvaluatedSolution evaluate(const Instance& instance, const PathCache& cache,
                           std::span<const NodeId> medians);

/// Objective recomputed from an explicit plan, summing per client the path
/// cost minus the reductions on its served path.
double objective_with_plan(const Instance& instance, const PathCache& cache,
                           std::span<const NodeId> medians, std::span<const double> reduction);

std::vector<double> arc_caps(const Instance& instance);

/// Fast objective evaluation shared by the search and enumeration code.
///
/// Produces bit-identical values to `evaluate(...).objective`: the arithmetic
/// is performed in the same order, only sparse over the arcs actually used.
class Evaluator {
  public:
    struct Workspace {
        std::vector<double> weight;  // dense, kept zeroed between calls
        std::vector<ArcId> touched;
        std::vector<NodeId> serving;
    };

    Evaluator(const Instance& instance, const PathCache& cache, ThreadPool* pool = nullptr);

    const Instance& instance() const { return *instance_; }
    const PathCache& cache() const { return *cache_; }
    ThreadPool* pool() const { return pool_; }
    std::size_t worker_count() const { return workspaces_.size(); }

    /// Scratch space reserved for pool worker `worker`.
    Workspace& workspace(std::size_t worker) const { return *workspaces_[worker]; }

    /// Objective of a complete client-to-median assignment.
    double objective(std::span<const NodeId> serving, Workspace& ws) const;

    /// Objective of a median set (assignment computed on the fly).
    double objective_of(std::span<const NodeId> medians, Workspace& ws) const;

    EvaluatedSolution evaluate(std::span<const NodeId> medians) const;

    /// Call counter for the debug-build cross-check of incremental values.
    std::uint64_t next_check_tick() const { return check_ticks_->fetch_add(1, std::memory_order_relaxed); }

  private:
    const Instance* instance_;
    const PathCache* cache_;
    ThreadPool* pool_;
    std::vector<double> caps_;
    std::vector<std::unique_ptr<Workspace>> workspaces_;
    std::unique_ptr<std::atomic<std::uint64_t>> check_ticks_;
};

/// A median set with each client's best and second-best median, so that
/// F(S + i) and F(S - r + i) need one pass over the clients.
class MedianState {
  public:
    explicit MedianState(const Evaluator& evaluator);
    MedianState(const Evaluator& evaluator, std::span<const NodeId> medians);

    std::span<const NodeId> medians() const { return medians_; }
    bool contains(NodeId node) const { return member_[static_cast<std::size_t>(node)] != 0; }

    double objective_with_added(NodeId added, Evaluator::Workspace& ws) const;
    double objective_with_swap(NodeId removed, NodeId added, Evaluator::Workspace& ws) const;

    void add(NodeId node);
    void swap(NodeId removed, NodeId added);

  private:
    void rebuild();
    void cross_check(std::span<const NodeId> candidate, double fast) const;

    const Evaluator* evaluator_;
    std::vector<NodeId> medians_;  // ascending
    std::vector<char> member_;
    std::vector<NodeId> best_;
    std::vector<NodeId> second_;
};

} // namespace ipmu
