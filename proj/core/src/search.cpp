#include "ipmu/search.hpp"

#include "ipmu/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iterator>

namespace ipmu {

std::string_view strategy_name(LocalSearchStrategy strategy) {
    return strategy == LocalSearchStrategy::BestImprovement ? "best" : "first";
}

LocalSearchStrategy parse_strategy(std::string_view text) {
    if (text == "best" || text == "BEST" || text == "BI") {
        return LocalSearchStrategy::BestImprovement;
    }
    if (text == "first" || text == "FIRST" || text == "FI") {
        return LocalSearchStrategy::FirstImprovement;
    }
    throw Error("local search strategy must be 'best' or 'first', got '" + std::string(text) + "'");
}

void SearchConfig::validate() const {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw Error("alpha must be in [0, 1]");
    }
    if (max_iters < 1) {
        throw Error("max-iters must be at least 1");
    }
    if (max_iters_without_improvement < 0) {
        throw Error("max-iters-wi must be non-negative");
    }
}

namespace {

// F(S + i) for every candidate, evaluated on the pool.
std::vector<double> addition_values(const Evaluator& evaluator, const MedianState& state,
                                    std::span<const NodeId> candidates) {
    std::vector<double> values(candidates.size());
    parallel_for(evaluator.pool(), candidates.size(), [&](std::size_t k, std::size_t worker) {
        values[k] = state.objective_with_added(candidates[k], evaluator.workspace(worker));
    });
    return values;
}

std::vector<NodeId> complement(std::span<const NodeId> medians, std::int32_t n) {
    std::vector<char> member(static_cast<std::size_t>(n), 0);
    for (NodeId j : medians) {
        member[static_cast<std::size_t>(j)] = 1;
    }
    std::vector<NodeId> out;
    out.reserve(static_cast<std::size_t>(n) - medians.size());
    for (NodeId v = 0; v < n; ++v) {
        if (!member[static_cast<std::size_t>(v)]) {
            out.push_back(v);
        }
    }
    return out;
}

} // namespace

EvaluatedSolution kh_construct(const Evaluator& evaluator) {
    const Instance& inst = evaluator.instance();
    MedianState state(evaluator);
    std::vector<NodeId> candidates(static_cast<std::size_t>(inst.node_count()));
    for (NodeId v = 0; v < inst.node_count(); ++v) {
        candidates[static_cast<std::size_t>(v)] = v;
    }
    while (static_cast<std::int32_t>(state.medians().size()) < inst.medians()) {
        const std::vector<double> values = addition_values(evaluator, state, candidates);
        // min_element keeps the first minimum, i.e. the smaller id.
        const auto pick = static_cast<std::size_t>(
            std::distance(values.begin(), std::min_element(values.begin(), values.end())));
        state.add(candidates[pick]);
        candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    return evaluator.evaluate(state.medians());
}

std::vector<NodeId> grasp_construct(const Evaluator& evaluator, double alpha, Rng& rng) {
    const Instance& inst = evaluator.instance();
    MedianState state(evaluator);
    std::vector<NodeId> candidates(static_cast<std::size_t>(inst.node_count()));
    for (NodeId v = 0; v < inst.node_count(); ++v) {
        candidates[static_cast<std::size_t>(v)] = v;
    }
    std::vector<std::size_t> restricted;
    while (static_cast<std::int32_t>(state.medians().size()) < inst.medians()) {
        const std::vector<double> values = addition_values(evaluator, state, candidates);
        const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
        const double f_min = *lo;
        const double f_max = *hi;
        // Rounding in the threshold must never drop the minimum itself.
        const double threshold = std::max(f_min, f_max + alpha * (f_min - f_max));
        restricted.clear();
        for (std::size_t k = 0; k < values.size(); ++k) {
            if (values[k] <= threshold) {
                restricted.push_back(k);
            }
        }
        const std::size_t pick = restricted[rng.index(restricted.size())];
        state.add(candidates[pick]);
        candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    return {state.medians().begin(), state.medians().end()};
}

std::int32_t hamming(std::span<const NodeId> a, std::span<const NodeId> b) {
    if (a.size() != b.size()) {
        throw Error("hamming distance needs sets of equal size");
    }
    std::vector<NodeId> x(a.begin(), a.end());
    std::vector<NodeId> y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    std::vector<NodeId> diff;
    std::set_symmetric_difference(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(diff));
    return static_cast<std::int32_t>(diff.size() / 2);
}

std::optional<Swap> select_best_swap(std::span<const NodeId> medians, std::int32_t node_count,
                                     double current,
                                     const std::function<double(NodeId, NodeId)>& objective) {
    const std::vector<NodeId> outside = complement(medians, node_count);
    Swap best;
    for (NodeId removed : medians) {
        for (NodeId added : outside) {
            const double value = objective(removed, added);
            if (value < best.objective) {
                best = {removed, added, value};
            }
        }
    }
    if (best.removed == kNoNode || !improves(best.objective, current)) {
        return std::nullopt;
    }
    return best;
}

LocalSearchResult local_search(const Evaluator& evaluator, std::span<const NodeId> start,
                               LocalSearchStrategy strategy) {
    const Instance& inst = evaluator.instance();
    const std::int32_t n = inst.node_count();
    if (static_cast<std::int32_t>(start.size()) != inst.medians()) {
        throw Error("local search needs exactly p = " + std::to_string(inst.medians()) + " medians");
    }
    MedianState state(evaluator, start);
    double current = evaluator.objective_of(state.medians(), evaluator.workspace(0));
    LocalSearchResult result;
    result.trajectory.push_back(current);

    if (strategy == LocalSearchStrategy::BestImprovement) {
        std::vector<std::int32_t> position(static_cast<std::size_t>(n), -1);
        std::vector<double> values;
        for (;;) {
            const std::vector<NodeId> medians(state.medians().begin(), state.medians().end());
            const std::vector<NodeId> outside = complement(medians, n);
            for (std::size_t k = 0; k < outside.size(); ++k) {
                position[static_cast<std::size_t>(outside[k])] = static_cast<std::int32_t>(k);
            }
            for (std::size_t k = 0; k < medians.size(); ++k) {
                position[static_cast<std::size_t>(medians[k])] = static_cast<std::int32_t>(k);
            }
            const std::size_t width = outside.size();
            values.resize(medians.size() * width);
            parallel_for(evaluator.pool(), values.size(), [&](std::size_t k, std::size_t worker) {
                values[k] = state.objective_with_swap(medians[k / width], outside[k % width],
                                                      evaluator.workspace(worker));
            });
            const auto lookup = [&](NodeId removed, NodeId added) {
                return values[static_cast<std::size_t>(position[static_cast<std::size_t>(removed)]) * width +
                              static_cast<std::size_t>(position[static_cast<std::size_t>(added)])];
            };
            const std::optional<Swap> move = select_best_swap(medians, n, current, lookup);
            if (!move) {
                break;
            }
            state.swap(move->removed, move->added);
            current = move->objective;
            ++result.moves;
            result.trajectory.push_back(current);
        }
    } else {
        bool moved = true;
        while (moved) {
            moved = false;
            const std::vector<NodeId> medians(state.medians().begin(), state.medians().end());
            const std::vector<NodeId> outside = complement(medians, n);
            for (NodeId removed : medians) {
                for (NodeId added : outside) {
                    const double value =
                        state.objective_with_swap(removed, added, evaluator.workspace(0));
                    if (improves(value, current)) {
                        state.swap(removed, added);
                        current = value;
                        ++result.moves;
                        result.trajectory.push_back(current);
                        moved = true;
                        break;
                    }
                }
                if (moved) {
                    break;
                }
            }
        }
    }
    result.solution = evaluator.evaluate(state.medians());
    return result;
}

SearchResult grasp(const Evaluator& evaluator, const SearchConfig& config) {
    config.validate();
    const auto started = std::chrono::steady_clock::now();
    Rng rng(config.seed);
    SearchResult result;
    double best = std::numeric_limits<double>::infinity();
    std::int32_t iters = 0;
    std::int32_t iters_without_improvement = 0;
    // Both guards use <=, so up to max_iters + 1 iterations may run.
    while (iters <= config.max_iters &&
           iters_without_improvement <= config.max_iters_without_improvement) {
        ++iters;
        ++iters_without_improvement;
        const std::vector<NodeId> built = grasp_construct(evaluator, config.alpha, rng);
        const double constructed = evaluator.objective_of(built, evaluator.workspace(0));
        LocalSearchResult improved = local_search(evaluator, built, config.strategy);
        result.trace.push_back({constructed, improved.solution.objective});
        if (improves(improved.solution.objective, best)) {
            iters_without_improvement = 0;
            best = improved.solution.objective;
            result.best = std::move(improved.solution);
            result.iterations_at_best = iters;
        }
    }
    result.iterations_run = iters;
    result.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return result;
}

} // namespace ipmu
