#pragma once

#include <cstdint>

#include "colstream/conv_core.hpp"

// Deterministic input generation. SplitMix64 is the documented 64-bit
// mix-style generator; samples are drawn uniformly from [-128, 127]
// (low byte of the mixed state, exactly uniform since 2^64 is a multiple
// of 256). Generation order is fixed so outputs are reproducible across
// implementations: feature maps channel by channel in row-major order,
// then weights in (filter, channel, row, col) order, then biases per filter.

namespace colstream {

struct SplitMix64 {
    std::uint64_t state;

    explicit constexpr SplitMix64(std::uint64_t seed) : state(seed) {}

    constexpr std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform sample in [-128, 127].
    Sample next_sample() { return static_cast<Sample>(static_cast<int>(next() & 0xff) - 128); }

    /// Uniform-ish integer in [lo, hi] (modulo draw; fine for test-case shapes).
    std::int64_t bounded(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

inline FeatureMap random_feature_map(int n, SplitMix64& rng) {
    FeatureMap map(n, n);
    for (Sample& v : map.data) v = rng.next_sample();
    return map;
}

inline FilterSet random_filter_set(int out_filters, int in_channels, int k, SplitMix64& rng) {
    FilterSet filters(out_filters, in_channels, k);
    for (Sample& w : filters.weights) w = rng.next_sample();
    for (std::int32_t& b : filters.bias) b = rng.next_sample();
    return filters;
}

}  // namespace colstream
