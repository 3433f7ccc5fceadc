#include "sdm/allocation.hpp"

#include <stdexcept>
#include <unordered_set>

#include "sdm/sampling.hpp"

namespace sdm {
namespace {

/// Tier count 2^floor((basis_points/10000) * size), computed in integer
/// arithmetic so the floor is exact for every size.
ScheduleTier make_tier(std::uint64_t basis_points, double fraction, std::size_t size) {
    const std::uint64_t exponent = basis_points * size / 10000;
    if (exponent >= 64) {
        throw std::invalid_argument("dynamic_schedule: pattern size too large for tier counts");
    }
    return ScheduleTier{static_cast<std::size_t>(std::uint64_t{1} << exponent), fraction};
}

}  // namespace

std::size_t CorruptionSchedule::total_count() const {
    std::size_t total = 0;
    for (const auto& tier : tiers) {
        total += tier.count;
    }
    return total;
}

CorruptionSchedule dynamic_schedule(ModelKind model, std::size_t pattern_size) {
    if (pattern_size == 0) {
        throw std::invalid_argument("dynamic_schedule: pattern size must be positive");
    }
    const auto tier = [pattern_size](std::uint64_t bp, double fraction) {
        return make_tier(bp, fraction, pattern_size);
    };
    switch (model) {
        case ModelKind::kanerva_dynamic:
            // Dense near the pattern, thinning with distance.
            return CorruptionSchedule{{tier(175, 0.05), tier(150, 0.10), tier(125, 0.15),
                                       tier(100, 0.20), tier(75, 0.25)}};
        case ModelKind::signal_decay:
            // Symmetric: a near cluster plus a mirror cluster around the
            // complement (fractions 0.85-0.95).
            return CorruptionSchedule{{tier(150, 0.05), tier(125, 0.10), tier(100, 0.15),
                                       tier(75, 0.20), tier(100, 0.85), tier(125, 0.90),
                                       tier(150, 0.95)}};
        case ModelKind::kanerva_static:
            break;
    }
    throw std::invalid_argument("dynamic_schedule: the static model has no allocation schedule");
}

std::vector<BitPattern> static_random_locations(std::size_t length, std::size_t count,
                                                RandomSource& rng) {
    if (count == 0) {
        throw std::invalid_argument("static_random_locations: count must be positive");
    }
    if (length < 64 && count > (std::uint64_t{1} << length)) {
        throw std::invalid_argument(
            "static_random_locations: count exceeds the number of distinct addresses");
    }
    std::vector<BitPattern> out;
    out.reserve(count);
    std::unordered_set<BitPattern, BitPatternHash> seen;
    while (out.size() < count) {
        BitPattern p = random_pattern(length, rng);
        if (seen.insert(p).second) {
            out.push_back(std::move(p));
        }
    }
    return out;
}

std::vector<BitPattern> generate_locations(const BitPattern& pattern,
                                           const CorruptionSchedule& schedule,
                                           RandomSource& rng) {
    std::vector<BitPattern> out;
    out.reserve(schedule.total_count());
    for (const auto& tier : schedule.tiers) {
        for (std::size_t i = 0; i < tier.count; ++i) {
            out.push_back(corrupt(pattern, tier.fraction, rng));
        }
    }
    return out;
}

std::size_t ensure_locations(Memory& memory, std::span<const BitPattern> addresses) {
    std::size_t added = 0;
    for (const auto& address : addresses) {
        if (memory.add_location(address)) {
            ++added;
        }
    }
    return added;
}

}  // namespace sdm
