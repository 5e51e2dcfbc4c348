#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace netreg {

// Deterministic, platform-independent randomness. std::uniform_*_distribution
// is implementation-defined, so seeded results would not be reproducible
// across standard libraries; everything here is pinned bit-for-bit.

inline constexpr std::uint64_t kSplitMixGamma = 0x9E3779B97F4A7C15ULL;

/// SplitMix64 output function (Steele, Lea & Flood; public-domain reference
/// constants). Maps a state value to a well-mixed 64-bit output.
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Sub-seed for stream `stream` derived from a master seed. This is the
/// splittable-stream discipline used by seeded evaluation loops: stream k
/// gets splitmix64_mix(seed + (k+1)·gamma), so streams are independent of
/// execution order and thread count.
constexpr std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64_mix(seed + (stream + 1) * kSplitMixGamma);
}

/// Minimal SplitMix64 engine. Satisfies UniformRandomBitGenerator.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~std::uint64_t{0}; }

    result_type operator()() {
        state_ += kSplitMixGamma;
        return splitmix64_mix(state_);
    }

private:
    std::uint64_t state_;
};

/// Uniform double in [0, 1) from the top 53 bits.
inline double uniform_double(SplitMix64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform double in [lo, hi).
inline double uniform_double(SplitMix64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform_double(rng);
}

/// Unbiased uniform integer in [0, bound) by rejection.
inline std::uint64_t uniform_below(SplitMix64& rng, std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x = rng();
    while (x >= limit) x = rng();
    return x % bound;
}

/// Fisher-Yates shuffle with the deterministic engine.
template <typename T>
void shuffle(std::vector<T>& items, SplitMix64& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        std::swap(items[i - 1], items[uniform_below(rng, i)]);
    }
}

} // namespace netreg
