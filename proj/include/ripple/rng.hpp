#pragma once

#include <cstdint>

namespace ripple {

/// Deterministic 64-bit generator (splitmix64 update). Hand-rolled so that
/// seeded runs produce identical bytes on every platform; std::mt19937 would
/// do, but the distribution adapters around it are not pinned by the
/// standard.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, bound). bound = 0 is treated as the full 64-bit range.
    std::uint64_t next_below(std::uint64_t bound) {
        std::uint64_t v = next();
        return bound == 0 ? v : v % bound;
    }

    /// Uniform integer in [lo, hi], endpoints included.
    long long next_int(long long lo, long long hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<long long>(next_below(span));
    }

    /// Uniform double in [0, 1).
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

inline std::uint64_t splitmix64_scramble(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Stable per-instance seed: mixes a base seed with two indices so that
/// campaigns can regenerate any single instance in isolation.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
    std::uint64_t x = splitmix64_scramble(base + 0x9E3779B97F4A7C15ull * (a + 1));
    x = splitmix64_scramble(x + 0xC2B2AE3D27D4EB4Full * (b + 1));
    return x;
}

}  // namespace ripple
