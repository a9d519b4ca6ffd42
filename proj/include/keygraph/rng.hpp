/**
 * Reproducible random substreams.
 *
 * A RandomStream names a (master_seed, substream_id) pair. Its engine is
 * xoshiro256** whose 256-bit state is filled by four SplitMix64 outputs
 * seeded with mix64(master_seed ^ mix64(substream_id)). All derived variates
 * (uniform doubles, bounded integers) use fixed integer arithmetic so the
 * sequence is identical on every platform and standard library.
 */

#ifndef KEYGRAPH_RNG_HPP_
#define KEYGRAPH_RNG_HPP_

#include <array>
#include <cstdint>
#include <limits>

namespace keygraph {

/// SplitMix64 finalizer (Stafford variant 13).
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class Xoshiro256 {
 public:
    using result_type = std::uint64_t;

    explicit Xoshiro256(std::uint64_t seed);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound); bound must be positive.
    std::uint64_t below(std::uint64_t bound);

    bool bernoulli(double p) { return uniform01() < p; }

 private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::array<std::uint64_t, 4> s_{};
};

struct RandomStream {
    std::uint64_t master_seed = 0;
    std::uint64_t substream_id = 0;

    /// Independent child stream, e.g. one per sampling stage within a trial.
    RandomStream child(std::uint64_t tag) const {
        return RandomStream{master_seed, mix64(substream_id ^ mix64(tag + 0x5851f42d4c957f2dULL))};
    }

    Xoshiro256 engine() const { return Xoshiro256(mix64(master_seed ^ mix64(substream_id))); }
};

}  // namespace keygraph

#endif  // KEYGRAPH_RNG_HPP_
