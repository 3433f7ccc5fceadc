#pragma once

// Versioned, line-oriented text persistence for a Memory.
//
// Header:    SDM v1 model=<kind> n=<int> m=<decimal> locations=<count>
// Then one line per location: the address as 'x'-prefixed hex (ceil(n/4)
// digits, trailing pad bits zero) followed by n counters.
//
// Counters are written with 12 significant decimal digits. That is the
// persistence precision contract: parsing and re-serializing a snapshot
// reproduces it byte for byte on any platform.

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "sdm/memory.hpp"

namespace sdm {

/// Snapshot parse/IO failure. line() is 1-based; 0 means the failure
/// was not tied to a line (e.g. an unreadable file).
class SnapshotError : public std::runtime_error {
public:
    SnapshotError(std::size_t line, const std::string& message);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Serializes the memory. Locations appear in insertion order.
std::string format_snapshot(const Memory& memory);

/// Parses serialized text. Throws SnapshotError naming the offending
/// line on any malformation (bad header, wrong counter count, invalid
/// number, duplicate address, location count mismatch).
Memory parse_snapshot(std::string_view text);

/// Writes atomically: to a temporary file in the target directory,
/// then renamed over the destination.
void save_snapshot(const Memory& memory, const std::filesystem::path& path);

Memory load_snapshot(const std::filesystem::path& path);

}  // namespace sdm
