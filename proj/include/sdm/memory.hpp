#pragma once

// The memory itself: hard locations with counter vectors, the write
// rules for each model, and the summed read.
//
// A location is an address pattern plus one signed counter per bit.
// Writing adds +1 (or a fractional weight) to a counter where the
// stored pattern has a 1 and subtracts where it has a 0. Reading sums
// counters over the participating locations and thresholds each bit at
// zero. The three models differ in which locations a write touches:
//
//   kanerva-static / kanerva-dynamic
//       every location within a Hamming radius of the write address,
//       at unit weight;
//   signal-decay
//       every location, weighted by signal_strength() of its distance,
//       so far locations receive a small inverted echo of the pattern.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sdm/bit_pattern.hpp"

namespace sdm {

enum class ModelKind {
    kanerva_static,
    kanerva_dynamic,
    signal_decay,
};

/// Canonical names: "kanerva-static", "kanerva-dynamic", "signal-decay".
std::string_view to_string(ModelKind kind);

/// Inverse of to_string(). Throws std::invalid_argument on other text.
ModelKind parse_model_kind(std::string_view name);

/// Write weight for a location at Hamming distance `distance` from the
/// write address, for patterns of `length` bits.
///
/// Half a raised cosine: it falls from 1 at distance 0 to 0 at length/2,
/// then rises again, rescaled by the attenuation factor m, to m at the
/// complement distance. The reflected tail is what lets a memory respond
/// to the inverse of a stored pattern. Requires distance <= length and
/// m in (0, 1].
double signal_strength(std::size_t distance, std::size_t length, double attenuation);

/// Hard-location store. Addresses are unique; counters are doubles so
/// both unit and fractional writes share one representation.
class Memory {
public:
    /// Empty memory. attenuation is the signal-decay far-field scale m;
    /// it must lie in (0, 1] and is kept (and persisted) for all models
    /// so snapshots round-trip identically.
    Memory(ModelKind model, std::size_t pattern_length, double attenuation = 0.20);

    ModelKind model() const noexcept { return model_; }
    std::size_t pattern_length() const noexcept { return length_; }
    double attenuation() const noexcept { return attenuation_; }
    std::size_t location_count() const noexcept { return addresses_.size(); }

    bool contains(const BitPattern& address) const;

    /// Adds a location with zeroed counters. Returns false (and leaves
    /// the memory unchanged) if the address is already present. Throws
    /// on pattern-length mismatch.
    bool add_location(const BitPattern& address);

    const BitPattern& address_at(std::size_t index) const { return addresses_.at(index); }
    std::span<const double> counters_at(std::size_t index) const;
    std::span<double> counters_at(std::size_t index);

private:
    ModelKind model_;
    std::size_t length_;
    double attenuation_;
    std::vector<BitPattern> addresses_;
    std::vector<double> counters_;  // location-major, length_ per location
    std::unordered_map<BitPattern, std::size_t, BitPatternHash> index_;
};

/// Read accumulator: per-bit counter sums plus how many locations fell
/// inside the read radius.
struct SumVector {
    std::vector<double> sums;
    std::size_t contributing_locations = 0;
};

/// Radius write: +/-1 into every location within `radius` of `pattern`,
/// which serves as its own address. Rejected for signal-decay memories.
void store_kanerva(Memory& memory, const BitPattern& pattern, std::size_t radius);

/// Decay write: +/-signal_strength(distance) into every location.
/// Rejected unless the memory is a signal-decay model.
void store_signal_decay(Memory& memory, const BitPattern& pattern);

/// Sums counters over all locations within `radius` of `address`.
SumVector read_sums(const Memory& memory, const BitPattern& address, std::size_t radius);

/// Bit i of the result is 1 exactly where sums[i] > 0; ties fall to 0.
BitPattern threshold(const SumVector& sums);

}  // namespace sdm
