#pragma once

#include <cstdint>
#include <limits>
#include <utility>

namespace confdist::random {

/// SplitMix64 finalizer (Stafford variant 13); a bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// SplitMix64 generator (Steele, Lea, Flood 2014). Satisfies UniformRandomBitGenerator.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit constexpr SplitMix64(std::uint64_t state) : state_(state) {}

    constexpr result_type operator()() {
        state_ += kGamma;
        return mix64(state_);
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

private:
    std::uint64_t state_;
};

/// Independent stream for one replicate. Every simulated quantity is a function of
/// (seed, lane, index) alone, so results do not depend on scheduling.
/// Sweeps use the sigma-grid position as lane; PIT runs use kPitLane.
constexpr SplitMix64 replicate_stream(std::uint64_t seed, std::uint64_t lane, std::uint64_t index) {
    return SplitMix64(mix64(mix64(seed ^ mix64(lane + SplitMix64::kGamma)) + index * SplitMix64::kGamma));
}

inline constexpr std::uint64_t kPitLane = 0x5049540000000000ULL;

/// Uniform on the open interval (0, 1) with 53 random bits.
constexpr double uniform_open(SplitMix64& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

/// Two independent standard normals by the Box–Muller transform.
std::pair<double, double> standard_normal_pair(SplitMix64& rng);

}  // namespace confdist::random
