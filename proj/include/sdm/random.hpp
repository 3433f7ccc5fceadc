#pragma once

// Deterministic random number generation.
//
// Everything downstream of a seed must reproduce bit-for-bit across
// platforms and standard-library implementations, so the generator and
// every distribution built on top of it live here instead of <random>.
// The engine is SplitMix64: 64 bits of state, one multiply-xorshift
// finalizer per draw, and cheap splitting into independent streams.

#include <cstdint>
#include <initializer_list>
#include <stdexcept>

namespace sdm {

/// Finalization mix used by SplitMix64. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// SplitMix64 generator. Copyable; copies continue the same sequence.
class RandomSource {
public:
    explicit constexpr RandomSource(std::uint64_t seed) noexcept : state_(seed) {}

    /// Next raw 64-bit draw.
    constexpr std::uint64_t next_u64() noexcept {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix64(state_);
    }

    /// Uniform draw from [0, bound) via rejection sampling; no modulo bias.
    constexpr std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) {
            throw std::invalid_argument("RandomSource::below: bound must be positive");
        }
        // 2^64 mod bound: draws under this threshold would be biased.
        const std::uint64_t reject_under = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= reject_under) {
                return r % bound;
            }
        }
    }

    /// Uniform draw from [0, 1). 53 random mantissa bits.
    constexpr double next_double() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Child generator statistically independent of this one's future output.
    constexpr RandomSource split() noexcept { return RandomSource(next_u64()); }

private:
    std::uint64_t state_;
};

/// Generator for a labeled stream under a root seed.
///
/// Streams with distinct paths are independent; the same (seed, path)
/// always yields the same stream. Used to give each experiment cell its
/// own reproducible randomness regardless of evaluation order.
inline RandomSource derive_stream(std::uint64_t root_seed,
                                  std::initializer_list<std::uint64_t> path) {
    std::uint64_t s = mix64(root_seed + 0x9E3779B97F4A7C15ull);
    for (const std::uint64_t label : path) {
        s = mix64(s ^ mix64(label + 0x9E3779B97F4A7C15ull));
    }
    return RandomSource(s);
}

}  // namespace sdm
