#pragma once

// Hard-location allocation: where the memory's locations come from.
//
// The static model draws a fixed population of uniform random
// addresses up front. The dynamic models instead allocate around each
// stored pattern: a schedule lists (count, corruption fraction) tiers,
// and every write plants `count` addresses that are corrupted copies
// of the pattern at each tier's fraction. High-fraction tiers land
// near the pattern's complement, which is how a signal-decay memory
// acquires locations that respond to inverted cues.

#include <cstddef>
#include <vector>

#include "sdm/bit_pattern.hpp"
#include "sdm/memory.hpp"
#include "sdm/random.hpp"

namespace sdm {

/// One allocation tier: how many addresses, at what corruption level.
struct ScheduleTier {
    std::size_t count = 0;
    double fraction = 0.0;

    friend bool operator==(const ScheduleTier&, const ScheduleTier&) = default;
};

struct CorruptionSchedule {
    std::vector<ScheduleTier> tiers;

    /// Total addresses drawn per stored pattern.
    std::size_t total_count() const;

    friend bool operator==(const CorruptionSchedule&, const CorruptionSchedule&) = default;
};

/// Built-in schedule for a dynamic model at the given pattern size.
/// Tier counts are 2^floor(k% of size) for fixed per-model ladders of
/// k, so they scale with the address space. Rejected for the static
/// model and for sizes whose counts would overflow.
CorruptionSchedule dynamic_schedule(ModelKind model, std::size_t pattern_size);

/// `count` distinct uniform addresses of the given length. Rejected if
/// count is zero or exceeds the 2^length distinct addresses available.
std::vector<BitPattern> static_random_locations(std::size_t length, std::size_t count,
                                                RandomSource& rng);

/// Addresses a dynamic write plants around `pattern`: tier by tier, in
/// order, each a fresh corrupted copy. Duplicates are possible; callers
/// deduplicate via ensure_locations().
std::vector<BitPattern> generate_locations(const BitPattern& pattern,
                                           const CorruptionSchedule& schedule,
                                           RandomSource& rng);

/// Adds each address not already present. Returns how many were new.
std::size_t ensure_locations(Memory& memory, std::span<const BitPattern> addresses);

}  // namespace sdm
