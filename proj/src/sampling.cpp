#include "sdm/sampling.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace sdm {
namespace {

/// First `take` entries of a uniform random permutation of [0, length).
/// Partial Fisher-Yates: only `take` swaps, uniform over position sets.
std::vector<std::size_t> sample_positions(std::size_t length, std::size_t take,
                                          RandomSource& rng) {
    std::vector<std::size_t> pool(length);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t i = 0; i < take; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(length - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(take);
    return pool;
}

}  // namespace

std::size_t corruption_flip_count(double fraction, std::size_t length) {
    if (!(fraction >= 0.0 && fraction <= 1.0)) {
        throw std::invalid_argument("corruption_flip_count: fraction must lie in [0, 1]");
    }
    return static_cast<std::size_t>(std::llround(fraction * static_cast<double>(length)));
}

BitPattern random_pattern(std::size_t length, RandomSource& rng) {
    if (length == 0) {
        throw std::invalid_argument("random_pattern: length must be positive");
    }
    std::vector<std::uint64_t> words((length + 63) / 64);
    for (auto& w : words) {
        w = rng.next_u64();
    }
    const std::size_t used = length % 64;
    if (used != 0) {
        words.back() &= (std::uint64_t{1} << used) - 1;
    }
    return BitPattern::from_words(length, std::move(words));
}

BitPattern random_with_qfactor(std::size_t length, std::size_t ones, RandomSource& rng) {
    if (length == 0) {
        throw std::invalid_argument("random_with_qfactor: length must be positive");
    }
    if (ones > length) {
        throw std::invalid_argument("random_with_qfactor: more ones requested than positions");
    }
    const auto positions = sample_positions(length, ones, rng);
    return BitPattern::from_positions(length, positions);
}

BitPattern corrupt(const BitPattern& source, double fraction, RandomSource& rng) {
    const std::size_t flips = corruption_flip_count(fraction, source.length());
    const auto positions = sample_positions(source.length(), flips, rng);
    return source.with_flipped(positions);
}

}  // namespace sdm
