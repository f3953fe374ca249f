#include "ipmu/upgrade.hpp"

#include "ipmu/parallel.hpp"

#include <algorithm>
#include <numeric>

namespace ipmu {

namespace {

// Knapsack order: weight descending, arc id ascending. `heap_less` is the
// inverse, for std heaps whose top is the first arc in knapsack order.
struct HeapLess {
    std::span<const double> weight;
    bool operator()(ArcId a, ArcId b) const {
        const double wa = weight[static_cast<std::size_t>(a)];
        const double wb = weight[static_cast<std::size_t>(b)];
        return wa < wb || (wa == wb && a > b);
    }
};

void check_median_set(const Instance& instance, std::span<const NodeId> medians) {
    if (medians.empty()) {
        throw Error("cannot evaluate an empty median set");
    }
    if (static_cast<std::int32_t>(medians.size()) > instance.medians()) {
        throw Error("median set has " + std::to_string(medians.size()) + " nodes, more than p = " +
                    std::to_string(instance.medians()));
    }
    std::vector<char> seen(static_cast<std::size_t>(instance.node_count()), 0);
    for (NodeId j : medians) {
        if (j < 0 || j >= instance.node_count()) {
            throw Error("median id " + std::to_string(j + 1) + " out of range");
        }
        if (seen[static_cast<std::size_t>(j)]) {
            throw Error("median " + std::to_string(j + 1) + " listed twice");
        }
        seen[static_cast<std::size_t>(j)] = 1;
    }
}

double base_cost(const Instance& instance, const PathCache& cache, std::span<const NodeId> serving) {
    double base = 0.0;
    for (NodeId c = 0; c < instance.node_count(); ++c) {
        base += instance.demand(c) * cache.cost(c, serving[static_cast<std::size_t>(c)]);
    }
    return base;
}

} // namespace

std::vector<double> arc_caps(const Instance& instance) {
    std::vector<double> caps;
    caps.reserve(static_cast<std::size_t>(instance.arc_count()));
    for (const Arc& a : instance.arcs()) {
        caps.push_back(a.cap);
    }
    return caps;
}

Assignment assign(const PathCache& cache, std::span<const NodeId> medians) {
    if (medians.empty()) {
        throw Error("cannot assign clients to an empty median set");
    }
    Assignment out;
    out.serving.resize(static_cast<std::size_t>(cache.node_count()));
    for (NodeId c = 0; c < cache.node_count(); ++c) {
        NodeId best = medians[0];
        for (NodeId j : medians.subspan(1)) {
            if (prefers(cache, c, j, best)) {
                best = j;
            }
        }
        out.serving[static_cast<std::size_t>(c)] = best;
    }
    return out;
}

ArcWeights arc_weights(const PathCache& cache, const Assignment& assignment,
                       const Instance& instance) {
    ArcWeights out;
    out.weight.assign(static_cast<std::size_t>(instance.arc_count()), 0.0);
    for (NodeId c = 0; c < instance.node_count(); ++c) {
        const double w = instance.demand(c);
        if (w <= 0.0) {
            continue;
        }
        const NodeId s = assignment.serving[static_cast<std::size_t>(c)];
        for (NodeId v = c; v != s;) {
            const ArcId a = cache.pred_arc(v, s);
            out.weight[static_cast<std::size_t>(a)] += w;
            v = instance.arc(a).src;
        }
    }
    return out;
}

UpgradePlan relax_edges(std::span<const double> weight, std::span<const double> caps,
                        double budget) {
    if (weight.size() != caps.size()) {
        throw Error("weight and cap vectors differ in length");
    }
    UpgradePlan plan;
    plan.reduction.assign(weight.size(), 0.0);
    std::vector<ArcId> order;
    for (std::size_t a = 0; a < weight.size(); ++a) {
        if (weight[a] > 0.0) {
            order.push_back(static_cast<ArcId>(a));
        }
    }
    const HeapLess less{weight};
    std::sort(order.begin(), order.end(), [&](ArcId a, ArcId b) { return less(b, a); });
    double remaining = budget;
    for (ArcId a : order) {
        const auto k = static_cast<std::size_t>(a);
        const double b = std::min(remaining, caps[k]);
        plan.reduction[k] = b;
        remaining -= b;
        plan.gain += weight[k] * b;
    }
    return plan;
}

UpgradePlan relax_edges(const ArcWeights& weights, const Instance& instance) {
    return relax_edges(weights.weight, arc_caps(instance), instance.budget());
}

EvaluatedSolution evaluate(const Instance& instance, const PathCache& cache,
                           std::span<const NodeId> medians) {
    check_median_set(instance, medians);
    EvaluatedSolution out;
    out.medians.assign(medians.begin(), medians.end());
    std::sort(out.medians.begin(), out.medians.end());
    out.assignment = assign(cache, out.medians);
    const ArcWeights weights = arc_weights(cache, out.assignment, instance);
    out.plan = relax_edges(weights, instance);
    out.base_cost = base_cost(instance, cache, out.assignment.serving);
    out.objective = out.base_cost - out.plan.gain;
    return out;
}

double objective_with_plan(const Instance& instance, const PathCache& cache,
                           std::span<const NodeId> medians, std::span<const double> reduction) {
    if (reduction.size() != static_cast<std::size_t>(instance.arc_count())) {
        throw Error("plan has " + std::to_string(reduction.size()) + " entries, expected " +
                    std::to_string(instance.arc_count()));
    }
    const Assignment assignment = assign(cache, medians);
    double total = 0.0;
    for (NodeId c = 0; c < instance.node_count(); ++c) {
        const NodeId s = assignment.serving[static_cast<std::size_t>(c)];
        double path = cache.cost(c, s);
        for (ArcId a : path_arcs(cache, instance, c, s)) {
            path -= reduction[static_cast<std::size_t>(a)];
        }
        total += instance.demand(c) * path;
    }
    return total;
}

Evaluator::Evaluator(const Instance& instance, const PathCache& cache, ThreadPool* pool)
    : instance_(&instance), cache_(&cache), pool_(pool), caps_(arc_caps(instance)),
      check_ticks_(std::make_unique<std::atomic<std::uint64_t>>(0)) {
    const std::size_t workers = pool ? pool->size() : 1;
    for (std::size_t w = 0; w < workers; ++w) {
        auto ws = std::make_unique<Workspace>();
        ws->weight.assign(static_cast<std::size_t>(instance.arc_count()), 0.0);
        ws->serving.resize(static_cast<std::size_t>(instance.node_count()));
        workspaces_.push_back(std::move(ws));
    }
}

double Evaluator::objective(std::span<const NodeId> serving, Workspace& ws) const {
    const Instance& inst = *instance_;
    const PathCache& cache = *cache_;
    const auto arcs = inst.arcs();
    double base = 0.0;
    for (NodeId c = 0; c < inst.node_count(); ++c) {
        const NodeId s = serving[static_cast<std::size_t>(c)];
        const double w = inst.demand(c);
        base += w * cache.cost(c, s);
        if (w <= 0.0) {
            continue;
        }
        const auto preds = cache.preds_from(s);
        for (NodeId v = c; v != s;) {
            const ArcId a = preds[static_cast<std::size_t>(v)];
            double& slot = ws.weight[static_cast<std::size_t>(a)];
            if (slot == 0.0) {
                ws.touched.push_back(a);
            }
            slot += w;
            v = arcs[static_cast<std::size_t>(a)].src;
        }
    }

    // Partial heap sort: only the arcs that receive budget are extracted.
    const HeapLess less{ws.weight};
    std::make_heap(ws.touched.begin(), ws.touched.end(), less);
    double remaining = inst.budget();
    double gain = 0.0;
    auto end = ws.touched.end();
    while (remaining > 0.0 && end != ws.touched.begin()) {
        std::pop_heap(ws.touched.begin(), end, less);
        --end;
        const auto k = static_cast<std::size_t>(*end);
        const double b = std::min(remaining, caps_[k]);
        remaining -= b;
        gain += ws.weight[k] * b;
    }
    for (ArcId a : ws.touched) {
        ws.weight[static_cast<std::size_t>(a)] = 0.0;
    }
    ws.touched.clear();
    return base - gain;
}

double Evaluator::objective_of(std::span<const NodeId> medians, Workspace& ws) const {
    const PathCache& cache = *cache_;
    for (NodeId c = 0; c < cache.node_count(); ++c) {
        NodeId best = medians[0];
        for (NodeId j : medians.subspan(1)) {
            if (prefers(cache, c, j, best)) {
                best = j;
            }
        }
        ws.serving[static_cast<std::size_t>(c)] = best;
    }
    return objective(ws.serving, ws);
}

EvaluatedSolution Evaluator::evaluate(std::span<const NodeId> medians) const {
    return ipmu::evaluate(*instance_, *cache_, medians);
}

MedianState::MedianState(const Evaluator& evaluator) : evaluator_(&evaluator) {
    const auto n = static_cast<std::size_t>(evaluator.instance().node_count());
    member_.assign(n, 0);
    best_.assign(n, kNoNode);
    second_.assign(n, kNoNode);
}

MedianState::MedianState(const Evaluator& evaluator, std::span<const NodeId> medians)
    : MedianState(evaluator) {
    medians_.assign(medians.begin(), medians.end());
    std::sort(medians_.begin(), medians_.end());
    for (NodeId j : medians_) {
        member_[static_cast<std::size_t>(j)] = 1;
    }
    rebuild();
}

void MedianState::rebuild() {
    const PathCache& cache = evaluator_->cache();
    for (NodeId c = 0; c < cache.node_count(); ++c) {
        NodeId best = kNoNode;
        NodeId second = kNoNode;
        for (NodeId j : medians_) {
            if (best == kNoNode || prefers(cache, c, j, best)) {
                second = best;
                best = j;
            } else if (second == kNoNode || prefers(cache, c, j, second)) {
                second = j;
            }
        }
        best_[static_cast<std::size_t>(c)] = best;
        second_[static_cast<std::size_t>(c)] = second;
    }
}

double MedianState::objective_with_added(NodeId added, Evaluator::Workspace& ws) const {
    const PathCache& cache = evaluator_->cache();
    for (NodeId c = 0; c < cache.node_count(); ++c) {
        const NodeId best = best_[static_cast<std::size_t>(c)];
        ws.serving[static_cast<std::size_t>(c)] =
            (best == kNoNode || prefers(cache, c, added, best)) ? added : best;
    }
    const double value = evaluator_->objective(ws.serving, ws);
#ifndef NDEBUG
    std::vector<NodeId> candidate = medians_;
    candidate.push_back(added);
    cross_check(candidate, value);
#endif
    return value;
}

double MedianState::objective_with_swap(NodeId removed, NodeId added, Evaluator::Workspace& ws) const {
    const PathCache& cache = evaluator_->cache();
    for (NodeId c = 0; c < cache.node_count(); ++c) {
        const auto k = static_cast<std::size_t>(c);
        const NodeId keep = best_[k] == removed ? second_[k] : best_[k];
        ws.serving[k] = (keep == kNoNode || prefers(cache, c, added, keep)) ? added : keep;
    }
    const double value = evaluator_->objective(ws.serving, ws);
#ifndef NDEBUG
    std::vector<NodeId> candidate;
    for (NodeId j : medians_) {
        if (j != removed) {
            candidate.push_back(j);
        }
    }
    candidate.push_back(added);
    cross_check(candidate, value);
#endif
    return value;
}

void MedianState::cross_check(std::span<const NodeId> candidate, double fast) const {
    if (evaluator_->next_check_tick() % 100 != 0) {
        return;
    }
    const double naive = ipmu::evaluate(evaluator_->instance(), evaluator_->cache(), candidate).objective;
    if (naive != fast) {
        throw std::logic_error("incremental evaluation disagrees with evaluate()");
    }
}

void MedianState::add(NodeId node) {
    const PathCache& cache = evaluator_->cache();
    medians_.insert(std::upper_bound(medians_.begin(), medians_.end(), node), node);
    member_[static_cast<std::size_t>(node)] = 1;
    for (NodeId c = 0; c < cache.node_count(); ++c) {
        const auto k = static_cast<std::size_t>(c);
        if (best_[k] == kNoNode || prefers(cache, c, node, best_[k])) {
            second_[k] = best_[k];
            best_[k] = node;
        } else if (second_[k] == kNoNode || prefers(cache, c, node, second_[k])) {
            second_[k] = node;
        }
    }
}

void MedianState::swap(NodeId removed, NodeId added) {
    auto it = std::find(medians_.begin(), medians_.end(), removed);
    if (it == medians_.end() || contains(added)) {
        throw Error("invalid swap");
    }
    medians_.erase(it);
    member_[static_cast<std::size_t>(removed)] = 0;
    medians_.insert(std::upper_bound(medians_.begin(), medians_.end(), added), added);
    member_[static_cast<std::size_t>(added)] = 1;
    rebuild();
}

} // namespace ipmu
