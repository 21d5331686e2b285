#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "conngraph/graph.hpp"

namespace conngraph {

using RandomStream = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Independent stream for trial `index` under `seed`. Depends only on the
/// pair, so trials can run on any worker in any order.
inline RandomStream derive_stream(std::uint64_t seed, std::uint64_t index) {
    const std::uint64_t a = mix64(seed ^ mix64(index));
    const std::uint64_t b = mix64(a ^ 0xD1B54A32D192ED03ULL);
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    return RandomStream(seq);
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(RandomStream& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, bound), bound > 0, by rejection.
inline std::uint64_t uniform_index(RandomStream& rng, std::uint64_t bound) {
    const std::uint64_t limit = RandomStream::max() - RandomStream::max() % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

/// One draw from G(parent, p): every parent edge kept independently with
/// probability p. p outside [0, 1] is InvalidParameter.
SampledGraph sample_graph(const UnderlyingGraph& parent, double p, RandomStream& rng);

/// Union of T independent sample_graph draws.
SampledGraph sample_union(const UnderlyingGraph& parent, double p, std::size_t T, RandomStream& rng);

}  // namespace conngraph
