#pragma once

// Random pattern generation and controlled corruption.
//
// Corruption flips an exact number of distinct positions, not a
// per-bit coin toss: benchmarks sweep noise levels and need every cue
// at a level to sit at the same Hamming distance from its source.

#include <cstddef>

#include "sdm/bit_pattern.hpp"
#include "sdm/random.hpp"

namespace sdm {

/// Number of positions corrupt() flips: fraction * length rounded half
/// up. fraction must lie in [0, 1].
std::size_t corruption_flip_count(double fraction, std::size_t length);

/// Uniform random pattern of the given length.
BitPattern random_pattern(std::size_t length, RandomSource& rng);

/// Random pattern with exactly `ones` bits set, uniform over that set.
/// Throws if ones > length.
BitPattern random_with_qfactor(std::size_t length, std::size_t ones, RandomSource& rng);

/// Copy of `source` with corruption_flip_count(fraction, length)
/// distinct positions flipped, chosen uniformly.
BitPattern corrupt(const BitPattern& source, double fraction, RandomSource& rng);

}  // namespace sdm
