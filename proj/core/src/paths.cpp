#include "ipmu/paths.hpp"

#include "ipmu/parallel.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <tuple>

namespace ipmu {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Label {
    double time;
    double cost;
    NodeId node;

    // Min-heap ordering on (time, cost, node).
    bool operator>(const Label& o) const {
        return std::tie(time, cost, node) > std::tie(o.time, o.cost, o.node);
    }
};

void single_source(const Instance& instance, NodeId source, std::span<double> time,
                   std::span<double> cost, std::span<ArcId> pred) {
    const auto n = static_cast<std::size_t>(instance.node_count());
    std::fill(time.begin(), time.end(), kInf);
    std::fill(cost.begin(), cost.end(), kInf);
    std::fill(pred.begin(), pred.end(), kNoArc);
    std::vector<char> settled(n, 0);

    std::priority_queue<Label, std::vector<Label>, std::greater<>> heap;
    time[static_cast<std::size_t>(source)] = 0.0;
    cost[static_cast<std::size_t>(source)] = 0.0;
    heap.push({0.0, 0.0, source});
    while (!heap.empty()) {
        const Label top = heap.top();
        heap.pop();
        const auto v = static_cast<std::size_t>(top.node);
        if (settled[v] || top.time != time[v] || top.cost != cost[v]) {
            continue;
        }
        settled[v] = 1;
        for (ArcId id : instance.out_arcs(top.node)) {
            const Arc& a = instance.arc(id);
            const auto w = static_cast<std::size_t>(a.dst);
            if (settled[w]) {
                continue;  // keeps the predecessor structure a tree under zero-weight arcs
            }
            const double t = time[v] + a.time;
            const double c = cost[v] + a.cost;
            bool better = t < time[w] || (t == time[w] && c < cost[w]);
            if (!better && t == time[w] && c == cost[w]) {
                // Equal label: the smaller predecessor node wins.
                better = pred[w] != kNoArc && top.node < instance.arc(pred[w]).src;
                if (better) {
                    pred[w] = id;
                }
                continue;
            }
            if (better) {
                time[w] = t;
                cost[w] = c;
                pred[w] = id;
                heap.push({t, c, a.dst});
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!settled[i]) {
            throw Error("node " + std::to_string(i + 1) + " is unreachable from node " +
                        std::to_string(source + 1));
        }
    }
}

} // namespace

PathCache compute_path_cache(const Instance& instance, ThreadPool* pool) {
    const auto n = static_cast<std::size_t>(instance.node_count());
    std::vector<double> time(n * n);
    std::vector<double> cost(n * n);
    std::vector<ArcId> pred(n * n);
    parallel_for(pool, n, [&](std::size_t source, std::size_t) {
        single_source(instance, static_cast<NodeId>(source),
                      std::span<double>(time).subspan(source * n, n),
                      std::span<double>(cost).subspan(source * n, n),
                      std::span<ArcId>(pred).subspan(source * n, n));
    });
    return PathCache(instance.node_count(), std::move(time), std::move(cost), std::move(pred));
}

std::vector<ArcId> path_arcs(const PathCache& cache, const Instance& instance, NodeId client,
                             NodeId source) {
    if (client < 0 || client >= cache.node_count() || source < 0 || source >= cache.node_count()) {
        throw Error("node id out of range");
    }
    std::vector<ArcId> arcs;
    NodeId v = client;
    while (v != source) {
        const ArcId id = cache.pred_arc(v, source);
        arcs.push_back(id);
        v = instance.arc(id).src;
    }
    std::reverse(arcs.begin(), arcs.end());
    return arcs;
}

} // namespace ipmu
