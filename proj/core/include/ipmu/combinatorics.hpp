#pragma once

#include "ipmu/common.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace ipmu {

/// C(n, k), saturating at UINT64_MAX on overflow.
std::uint64_t binomial(std::int64_t n, std::int64_t k);

/// Dense lexicographic indexing of the k-subsets of {0..n-1}.
///
/// Subsets are ascending vectors; rank 0 is {0,1,...,k-1} and ranks follow
/// lexicographic order of those vectors.
class SubsetIndexer {
  public:
    SubsetIndexer(std::int32_t n, std::int32_t k);

    std::int32_t n() const { return n_; }
    std::int32_t k() const { return k_; }
    std::uint64_t size() const { return size_; }

    std::uint64_t rank(std::span<const NodeId> subset) const;
    void unrank(std::uint64_t rank, std::span<NodeId> out) const;
    std::vector<NodeId> unrank(std::uint64_t rank) const;

  private:
    // C(a, b) lookup for a <= n, b <= k.
    std::uint64_t choose(std::int32_t a, std::int32_t b) const {
        return table_[static_cast<std::size_t>(a) * static_cast<std::size_t>(k_ + 1) +
                      static_cast<std::size_t>(b)];
    }

    std::int32_t n_;
    std::int32_t k_;
    std::uint64_t size_;
    std::vector<std::uint64_t> table_;
};

/// Advances an ascending k-subset of {0..n-1} to its lexicographic successor.
/// Returns false (leaving `subset` unspecified) after the last one.
bool next_subset(std::span<NodeId> subset, std::int32_t n);

} // namespace ipmu
