#pragma once

#include "ipmu/common.hpp"
#include "ipmu/instance.hpp"

#include <span>
#include <vector>

namespace ipmu {

class ThreadPool;

/// Fastest paths from every potential median to every client.
///
/// For source j and client i: `time(i, j)` is the c1-length of the chosen
/// fastest path from j to i, `cost(i, j)` the c2 accumulated along that same
/// path, and `pred_arc(i, j)` the last arc of it. Paths are labelled by the
/// pair (time, cost) compared lexicographically; equal labels keep the
/// predecessor with the smaller node id, so every path is unique.
///
/// Storage is source-major: row j holds the whole tree rooted at j.
class PathCache {
  public:
    PathCache() = default;
    PathCache(std::int32_t node_count, std::vector<double> time, std::vector<double> cost,
              std::vector<ArcId> pred)
        : n_(node_count), time_(std::move(time)), cost_(std::move(cost)), pred_(std::move(pred)) {}

    std::int32_t node_count() const { return n_; }

    double time(NodeId client, NodeId source) const { return time_[index(client, source)]; }
    double cost(NodeId client, NodeId source) const { return cost_[index(client, source)]; }
    ArcId pred_arc(NodeId client, NodeId source) const { return pred_[index(client, source)]; }

    /// Row for one source, indexed by client.
    std::span<const double> times_from(NodeId source) const { return row(time_, source); }
    std::span<const double> costs_from(NodeId source) const { return row(cost_, source); }
    std::span<const ArcId> preds_from(NodeId source) const { return row(pred_, source); }

    friend bool operator==(const PathCache&, const PathCache&) = default;

  private:
    std::size_t index(NodeId client, NodeId source) const {
        return static_cast<std::size_t>(source) * static_cast<std::size_t>(n_) +
               static_cast<std::size_t>(client);
    }
    template <class T>
    std::span<const T> row(const std::vector<T>& data, NodeId source) const {
        return std::span<const T>(data).subspan(static_cast<std::size_t>(source) * static_cast<std::size_t>(n_),
                                                static_cast<std::size_t>(n_));
    }

    std::int32_t n_ = 0;
    std::vector<double> time_;
    std::vector<double> cost_;
    std::vector<ArcId> pred_;
};

/// One labelled Dijkstra run per source. Throws `Error` naming the pair if
/// some client is unreachable from some source.
PathCache compute_path_cache(const Instance& instance, ThreadPool* pool = nullptr);

/// Arc ids of the chosen fastest path from `source` to `client`, in order
/// from the source. Empty iff client == source.
std::vector<ArcId> path_arcs(const PathCache& cache, const Instance& instance, NodeId client,
                             NodeId source);

} // namespace ipmu
