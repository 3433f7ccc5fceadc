#include "sdm/recall.hpp"

#include <stdexcept>
#include <utility>

namespace sdm {

BitPattern recall_once(const Memory& memory, const BitPattern& cue, std::size_t radius) {
    return threshold(read_sums(memory, cue, radius));
}

RecallResult recall_iterated(const Memory& memory, const BitPattern& cue, std::size_t radius,
                             std::size_t max_iters, bool record_trajectory) {
    if (max_iters == 0) {
        throw std::invalid_argument("recall_iterated: max_iters must be positive");
    }
    RecallResult result;
    if (record_trajectory) {
        result.trajectory.emplace();
    }
    BitPattern current = cue;
    for (std::size_t i = 1; i <= max_iters; ++i) {
        BitPattern next = recall_once(memory, current, radius);
        if (result.trajectory) {
            result.trajectory->push_back(next);
        }
        if (next == current) {
            result.pattern = std::move(next);
            result.iterations = i;
            result.converged = true;
            return result;
        }
        current = std::move(next);
    }
    result.pattern = std::move(current);
    result.iterations = max_iters;
    result.converged = false;
    return result;
}

}  // namespace sdm
