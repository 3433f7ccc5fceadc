#pragma once

// Reading the memory back: single-shot and iterated recall.
//
// Iterated recall feeds each output in as the next read address and
// stops at the first fixed point — an output equal to its own input —
// or after max_iters reads without one.

#include <cstddef>
#include <optional>
#include <vector>

#include "sdm/bit_pattern.hpp"
#include "sdm/memory.hpp"

namespace sdm {

struct RecallResult {
    BitPattern pattern;                                  // final output
    std::size_t iterations = 0;                          // reads performed
    bool converged = false;                              // fixed point reached
    std::optional<std::vector<BitPattern>> trajectory;   // per-read outputs, if recorded
};

/// One read: sum counters within `radius` of `cue`, threshold at zero.
/// With no location in range the sums are all zero and the result is
/// the all-zero pattern.
BitPattern recall_once(const Memory& memory, const BitPattern& cue, std::size_t radius);

/// Iterated recall from `cue`. max_iters must be positive; a cue that
/// is already a fixed point converges with iterations == 1.
RecallResult recall_iterated(const Memory& memory, const BitPattern& cue, std::size_t radius,
                             std::size_t max_iters, bool record_trajectory = false);

}  // namespace sdm
