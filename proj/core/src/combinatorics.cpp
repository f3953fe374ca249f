#include "ipmu/combinatorics.hpp"

#include "ipmu/rng.hpp"

#include <limits>

namespace ipmu {

std::uint64_t binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) {
        return 0;
    }
    if (k > n - k) {
        k = n - k;
    }
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    uint128 result = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        // result * (n - k + i) / i stays integral at every step.
        result = result * static_cast<uint128>(n - k + i) / static_cast<uint128>(i);
        if (result > kMax) {
            return kMax;
        }
    }
    return static_cast<std::uint64_t>(result);
}

SubsetIndexer::SubsetIndexer(std::int32_t n, std::int32_t k) : n_(n), k_(k) {
    if (n < 0 || k < 0 || k > n) {
        throw Error("invalid subset shape");
    }
    size_ = binomial(n, k);
    if (size_ == std::numeric_limits<std::uint64_t>::max()) {
        throw Error("C(" + std::to_string(n) + "," + std::to_string(k) + ") does not fit in 64 bits");
    }
    table_.resize(static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(k + 1));
    for (std::int32_t a = 0; a <= n; ++a) {
        for (std::int32_t b = 0; b <= k; ++b) {
            table_[static_cast<std::size_t>(a) * static_cast<std::size_t>(k + 1) +
                   static_cast<std::size_t>(b)] = binomial(a, b);
        }
    }
}

// Subsets that precede `subset`: at position i with previous element prev,
// every choice c in (prev, subset[i]) contributes C(n-1-c, k-1-i).
std::uint64_t SubsetIndexer::rank(std::span<const NodeId> subset) const {
    std::uint64_t r = 0;
    NodeId prev = -1;
    for (std::int32_t i = 0; i < k_; ++i) {
        const NodeId cur = subset[static_cast<std::size_t>(i)];
        for (NodeId c = prev + 1; c < cur; ++c) {
            r += choose(n_ - 1 - c, k_ - 1 - i);
        }
        prev = cur;
    }
    return r;
}

void SubsetIndexer::unrank(std::uint64_t rank, std::span<NodeId> out) const {
    NodeId c = 0;
    for (std::int32_t i = 0; i < k_; ++i) {
        for (;; ++c) {
            const std::uint64_t block = choose(n_ - 1 - c, k_ - 1 - i);
            if (rank < block) {
                break;
            }
            rank -= block;
        }
        out[static_cast<std::size_t>(i)] = c;
        ++c;
    }
}

std::vector<NodeId> SubsetIndexer::unrank(std::uint64_t rank) const {
    std::vector<NodeId> out(static_cast<std::size_t>(k_));
    unrank(rank, out);
    return out;
}

bool next_subset(std::span<NodeId> subset, std::int32_t n) {
    const auto k = static_cast<std::int32_t>(subset.size());
    std::int32_t i = k - 1;
    while (i >= 0 && subset[static_cast<std::size_t>(i)] == n - k + i) {
        --i;
    }
    if (i < 0) {
        return false;
    }
    ++subset[static_cast<std::size_t>(i)];
    for (std::int32_t j = i + 1; j < k; ++j) {
        subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
    }
    return true;
}

} // namespace ipmu
