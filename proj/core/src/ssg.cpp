#include "ipmu/ssg.hpp"

#include "ipmu/oracle.hpp"
#include "ipmu/parallel.hpp"
#include "ipmu/search.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <unordered_map>

namespace ipmu {

namespace {

constexpr std::uint64_t kBlock = 1024;

std::string format_value(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.6g", value);
    return buffer;
}

std::string format_exact(double value) {
    char buffer[64];
    auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, end);
}

std::string medians_label(std::span<const NodeId> medians) {
    std::string out;
    for (NodeId j : medians) {
        if (!out.empty()) {
            out += ' ';
        }
        out += std::to_string(j + 1);
    }
    return out;
}

} // namespace

std::uint64_t SearchSpaceGraph::edge_count() const {
    return static_cast<std::uint64_t>(
        std::count_if(successor.begin(), successor.end(), [](std::uint64_t s) { return s != kNoSuccessor; }));
}

std::vector<NodeId> SearchSpaceGraph::subset(std::uint64_t rank) const {
    return SubsetIndexer(node_count, medians).unrank(rank);
}

SearchSpaceGraph build_ssg(const Evaluator& evaluator, std::uint64_t limit) {
    const Instance& inst = evaluator.instance();
    const std::int32_t n = inst.node_count();
    const std::int32_t p = inst.medians();
    const std::uint64_t total = binomial(n, p);
    if (total > limit) {
        throw LimitExceeded("search space graph over C(" + std::to_string(n) + "," + std::to_string(p) +
                                ") = " + std::to_string(total) + " sets exceeds the limit of " +
                                std::to_string(limit),
                            total);
    }
    const SubsetIndexer indexer(n, p);
    SearchSpaceGraph ssg;
    ssg.node_count = n;
    ssg.medians = p;
    ssg.objective.resize(total);
    ssg.successor.assign(total, kNoSuccessor);

    const std::uint64_t blocks = (total + kBlock - 1) / kBlock;
    parallel_for(evaluator.pool(), blocks, [&](std::size_t block, std::size_t worker) {
        const std::uint64_t begin = block * kBlock;
        const std::uint64_t end = std::min(total, begin + kBlock);
        std::vector<NodeId> subset = indexer.unrank(begin);
        for (std::uint64_t r = begin; r < end; ++r) {
            ssg.objective[r] = evaluator.objective_of(subset, evaluator.workspace(worker));
            next_subset(subset, n);
        }
    });

    parallel_for(evaluator.pool(), blocks, [&](std::size_t block, std::size_t) {
        const std::uint64_t begin = block * kBlock;
        const std::uint64_t end = std::min(total, begin + kBlock);
        std::vector<NodeId> subset = indexer.unrank(begin);
        std::vector<NodeId> swapped(subset.size());
        std::vector<std::uint64_t> ranks;
        for (std::uint64_t r = begin; r < end; ++r) {
            const auto neighbour = [&](NodeId removed, NodeId added) {
                std::size_t k = 0;
                bool placed = false;
                for (NodeId j : subset) {
                    if (j == removed) {
                        continue;
                    }
                    if (!placed && added < j) {
                        swapped[k++] = added;
                        placed = true;
                    }
                    swapped[k++] = j;
                }
                if (!placed) {
                    swapped[k] = added;
                }
                return indexer.rank(swapped);
            };
            const auto move = select_best_swap(subset, n, ssg.objective[r], [&](NodeId removed, NodeId added) {
                return ssg.objective[neighbour(removed, added)];
            });
            if (move) {
                ssg.successor[r] = neighbour(move->removed, move->added);
            }
            next_subset(subset, n);
        }
    });
    return ssg;
}

std::vector<std::uint64_t> ssg_roots(const SearchSpaceGraph& ssg) {
    const std::uint64_t total = ssg.size();
    std::vector<std::uint64_t> root(total, kNoSuccessor);
    std::vector<std::uint64_t> chain;
    for (std::uint64_t start = 0; start < total; ++start) {
        std::uint64_t v = start;
        chain.clear();
        while (root[v] == kNoSuccessor && ssg.successor[v] != kNoSuccessor) {
            chain.push_back(v);
            v = ssg.successor[v];
            if (chain.size() > total) {
                throw std::logic_error("search space graph contains a cycle");
            }
        }
        const std::uint64_t r = root[v] != kNoSuccessor ? root[v] : v;
        root[v] = r;
        for (std::uint64_t u : chain) {
            root[u] = r;
        }
    }
    return root;
}

SsgStats ssg_stats(const SearchSpaceGraph& ssg) {
    SsgStats stats;
    if (ssg.size() == 0) {
        return stats;
    }
    const std::vector<std::uint64_t> root = ssg_roots(ssg);
    std::unordered_map<std::uint64_t, std::uint64_t> sizes;
    for (std::uint64_t r : root) {
        ++sizes[r];
    }
    for (const auto& [r, size] : sizes) {
        stats.basins.push_back({r, ssg.objective[r], size});
    }
    std::sort(stats.basins.begin(), stats.basins.end(), [](const Basin& a, const Basin& b) {
        return a.objective != b.objective ? a.objective < b.objective : a.root < b.root;
    });
    stats.local_optima = stats.basins.size();
    stats.global_value = *std::min_element(ssg.objective.begin(), ssg.objective.end());
    std::uint64_t global_nodes = 0;
    for (const Basin& b : stats.basins) {
        if (!improves(stats.global_value, b.objective)) {
            global_nodes += b.size;
        }
    }
    stats.global_basin_share = static_cast<double>(global_nodes) / static_cast<double>(ssg.size());
    return stats;
}

std::string export_dot(const SearchSpaceGraph& ssg, const DotOptions& options) {
    const std::vector<std::uint64_t> root = ssg_roots(ssg);
    std::unordered_map<std::uint64_t, std::uint64_t> basin_size;
    for (std::uint64_t r : root) {
        ++basin_size[r];
    }
    const auto collapsed = [&](std::uint64_t v) {
        return options.collapse_above > 0 && basin_size[root[v]] > options.collapse_above;
    };

    std::string out = "digraph ssg {\n";
    out += "  node [shape=circle, fontsize=10];\n";
    for (std::uint64_t v = 0; v < ssg.size(); ++v) {
        const bool is_root = root[v] == v;
        if (collapsed(v)) {
            if (is_root) {
                out += "  b" + std::to_string(v) + " [label=\"" + format_value(ssg.objective[v]) +
                       "\\n" + std::to_string(basin_size[v]) +
                       " sets\", shape=box, style=filled, fillcolor=gold];\n";
            }
            continue;
        }
        out += "  n" + std::to_string(v) + " [label=\"" + format_value(ssg.objective[v]) + "\"";
        if (is_root) {
            out += ", shape=doublecircle, style=filled, fillcolor=gold";
        }
        out += "];\n";
    }
    for (std::uint64_t v = 0; v < ssg.size(); ++v) {
        if (ssg.successor[v] == kNoSuccessor || collapsed(v)) {
            continue;
        }
        out += "  n" + std::to_string(v) + " -> n" + std::to_string(ssg.successor[v]) + ";\n";
    }
    out += "}\n";
    return out;
}

std::string stats_csv(const SearchSpaceGraph& ssg, const SsgStats& stats) {
    std::string out = "rank,objective,basin_size,medians\n";
    const SubsetIndexer indexer(ssg.node_count, ssg.medians);
    std::size_t position = 0;
    for (const Basin& b : stats.basins) {
        ++position;
        out += std::to_string(position) + ',' + format_exact(b.objective) + ',' +
               std::to_string(b.size) + ',' + medians_label(indexer.unrank(b.root)) + '\n';
    }
    return out;
}

} // namespace ipmu
