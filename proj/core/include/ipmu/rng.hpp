#pragma once

#include <array>
#include <cstdint>

namespace ipmu {

__extension__ using uint128 = unsigned __int128;

/// SplitMix64 step. Used to expand seeds and derive independent streams.
constexpr std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// xoshiro256** seeded through SplitMix64.
///
/// All derived draws (indices, reals) are computed with explicit integer
/// arithmetic so that sequences are identical across compilers and standard
/// libraries, unlike the std distributions.
class Rng {
  public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed = 0, std::uint64_t stream = 0) {
        std::uint64_t sm = seed;
        // Mix the stream id in so that (seed, k) streams do not overlap for
        // nearby seeds.
        std::uint64_t st = stream;
        sm ^= splitmix64(st);
        for (auto& word : state_) {
            word = splitmix64(sm);
        }
    }

    /// Independent generator for stream `id`, derived from this generator's
    /// current state without advancing it.
    Rng split(std::uint64_t id) const {
        return Rng(state_[0] ^ state_[2], id + 1);
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    result_type operator()() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Index in [0, bound) by 128-bit multiply-shift. bound must be > 0.
    std::uint64_t index(std::uint64_t bound) {
        const uint128 product = static_cast<uint128>((*this)()) * bound;
        return static_cast<std::uint64_t>(product >> 64);
    }

    /// Real in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    /// Integer in [lo, hi].
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(span == 0 ? (*this)() : index(span));
    }

  private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
};

} // namespace ipmu
