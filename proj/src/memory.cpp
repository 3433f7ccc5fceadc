#include "sdm/memory.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sdm {
namespace {

/// Stored pattern as +1/-1 per bit, so write loops are a single
/// multiply-add per counter.
std::vector<double> bipolar(const BitPattern& pattern) {
    std::vector<double> out(pattern.length());
    for (std::size_t i = 0; i < pattern.length(); ++i) {
        out[i] = pattern.bit(i) ? 1.0 : -1.0;
    }
    return out;
}

void check_store_pattern(const Memory& memory, const BitPattern& pattern) {
    if (pattern.length() != memory.pattern_length()) {
        throw std::invalid_argument("store: pattern length does not match memory");
    }
}

}  // namespace

std::string_view to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::kanerva_static: return "kanerva-static";
        case ModelKind::kanerva_dynamic: return "kanerva-dynamic";
        case ModelKind::signal_decay: return "signal-decay";
    }
    throw std::invalid_argument("to_string: unknown model kind");
}

ModelKind parse_model_kind(std::string_view name) {
    if (name == "kanerva-static") return ModelKind::kanerva_static;
    if (name == "kanerva-dynamic") return ModelKind::kanerva_dynamic;
    if (name == "signal-decay") return ModelKind::signal_decay;
    throw std::invalid_argument("parse_model_kind: unknown model '" + std::string(name) + "'");
}

double signal_strength(std::size_t distance, std::size_t length, double attenuation) {
    if (length == 0) {
        throw std::invalid_argument("signal_strength: length must be positive");
    }
    if (distance > length) {
        throw std::invalid_argument("signal_strength: distance exceeds pattern length");
    }
    if (!(attenuation > 0.0 && attenuation <= 1.0)) {
        throw std::invalid_argument("signal_strength: attenuation must lie in (0, 1]");
    }
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(distance) /
                         static_cast<double>(length);
    const double lobe = 0.5 * (std::cos(angle) + 1.0);
    // Near half: the full lobe. Far half: the same lobe scaled down to
    // peak at `attenuation` over the complement.
    return 2 * distance < length ? lobe : attenuation * lobe;
}

Memory::Memory(ModelKind model, std::size_t pattern_length, double attenuation)
    : model_(model), length_(pattern_length), attenuation_(attenuation) {
    if (pattern_length == 0) {
        throw std::invalid_argument("Memory: pattern length must be positive");
    }
    if (!(attenuation > 0.0 && attenuation <= 1.0)) {
        throw std::invalid_argument("Memory: attenuation must lie in (0, 1]");
    }
}

bool Memory::contains(const BitPattern& address) const {
    return index_.find(address) != index_.end();
}

bool Memory::add_location(const BitPattern& address) {
    if (address.length() != length_) {
        throw std::invalid_argument("add_location: address length does not match memory");
    }
    const auto [it, inserted] = index_.emplace(address, addresses_.size());
    if (!inserted) {
        return false;
    }
    addresses_.push_back(address);
    counters_.resize(counters_.size() + length_, 0.0);
    return true;
}

std::span<const double> Memory::counters_at(std::size_t index) const {
    if (index >= addresses_.size()) {
        throw std::out_of_range("counters_at: location index out of range");
    }
    return {counters_.data() + index * length_, length_};
}

std::span<double> Memory::counters_at(std::size_t index) {
    if (index >= addresses_.size()) {
        throw std::out_of_range("counters_at: location index out of range");
    }
    return {counters_.data() + index * length_, length_};
}

void store_kanerva(Memory& memory, const BitPattern& pattern, std::size_t radius) {
    if (memory.model() == ModelKind::signal_decay) {
        throw std::invalid_argument("store_kanerva: memory uses the signal-decay model");
    }
    check_store_pattern(memory, pattern);
    const auto delta = bipolar(pattern);
    for (std::size_t i = 0; i < memory.location_count(); ++i) {
        if (hamming(memory.address_at(i), pattern) > radius) {
            continue;
        }
        auto counters = memory.counters_at(i);
        for (std::size_t b = 0; b < delta.size(); ++b) {
            counters[b] += delta[b];
        }
    }
}

void store_signal_decay(Memory& memory, const BitPattern& pattern) {
    if (memory.model() != ModelKind::signal_decay) {
        throw std::invalid_argument("store_signal_decay: memory is not a signal-decay model");
    }
    check_store_pattern(memory, pattern);
    const auto delta = bipolar(pattern);
    for (std::size_t i = 0; i < memory.location_count(); ++i) {
        const std::size_t d = hamming(memory.address_at(i), pattern);
        const double weight = signal_strength(d, memory.pattern_length(), memory.attenuation());
        auto counters = memory.counters_at(i);
        for (std::size_t b = 0; b < delta.size(); ++b) {
            counters[b] += weight * delta[b];
        }
    }
}

SumVector read_sums(const Memory& memory, const BitPattern& address, std::size_t radius) {
    if (address.length() != memory.pattern_length()) {
        throw std::invalid_argument("read_sums: address length does not match memory");
    }
    SumVector out;
    out.sums.assign(memory.pattern_length(), 0.0);
    for (std::size_t i = 0; i < memory.location_count(); ++i) {
        if (hamming(memory.address_at(i), address) > radius) {
            continue;
        }
        const auto counters = memory.counters_at(i);
        for (std::size_t b = 0; b < out.sums.size(); ++b) {
            out.sums[b] += counters[b];
        }
        ++out.contributing_locations;
    }
    return out;
}

BitPattern threshold(const SumVector& sums) {
    if (sums.sums.empty()) {
        throw std::invalid_argument("threshold: empty sum vector");
    }
    BitPattern out = BitPattern::zeros(sums.sums.size());
    for (std::size_t i = 0; i < sums.sums.size(); ++i) {
        if (sums.sums[i] > 0.0) {
            out.set_bit(i, true);
        }
    }
    return out;
}

}  // namespace sdm
