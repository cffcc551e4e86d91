#pragma once

#include <cstdint>

namespace cps {

// splitmix64: tiny, seedable, bit-reproducible across platforms.
// Used everywhere randomness is needed so that reports are deterministic.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, bound) by rejection; bound > 0
    std::uint64_t below(std::uint64_t bound) {
        std::uint64_t limit = ~0ULL - (~0ULL % bound);
        std::uint64_t v;
        do { v = next(); } while (v >= limit);
        return v % bound;
    }
};

// stream derivation: independent stream for (seed, index), e.g. one per sample
inline SplitMix64 derive_rng(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mix(seed ^ (0x5851f42d4c957f2dULL * (index + 1)));
    mix.next();
    return mix;
}

} // namespace cps
