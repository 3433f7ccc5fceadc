#pragma once

// Fixed-length bit patterns: the points of the memory's address space.
//
// Bits are packed little-endian into 64-bit words: position p lives in
// word p/64 at bit p%64, so position 0 is the lowest bit of the first
// word. Unused bits above the pattern length are kept zero — equality,
// hashing and popcounts rely on that.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sdm {

class BitPattern {
public:
    /// Empty placeholder; real patterns come from the named constructors.
    BitPattern() = default;

    /// All-zero pattern of the given length. Throws if length == 0.
    static BitPattern zeros(std::size_t length);

    /// Pattern with exactly the listed positions set. Positions must be
    /// in range; duplicates are idempotent.
    static BitPattern from_positions(std::size_t length, std::span<const std::size_t> positions);

    /// Adopts packed words for a pattern of the given length. Throws if
    /// the word count is wrong or a bit above `length` is set.
    static BitPattern from_words(std::size_t length, std::vector<std::uint64_t> words);

    std::size_t length() const noexcept { return length_; }
    std::span<const std::uint64_t> words() const noexcept { return words_; }

    bool bit(std::size_t pos) const;
    void set_bit(std::size_t pos, bool value);
    void flip_bit(std::size_t pos);

    /// Copy with each listed position flipped once. Positions must be in
    /// range and distinct (a repeated position would flip back).
    BitPattern with_flipped(std::span<const std::size_t> positions) const;

    friend bool operator==(const BitPattern&, const BitPattern&) = default;

private:
    BitPattern(std::size_t length, std::vector<std::uint64_t> words)
        : length_(length), words_(std::move(words)) {}

    void check_pos(std::size_t pos) const;

    std::size_t length_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Number of set bits.
std::size_t qfactor(const BitPattern& p);

/// Hamming distance. Throws std::invalid_argument on length mismatch.
std::size_t hamming(const BitPattern& a, const BitPattern& b);

/// Pattern with every bit inverted.
BitPattern complement(const BitPattern& p);

/// Parses a pattern literal. Plain form is one '0'/'1' per position,
/// position 0 first ("1010" sets positions 0 and 2). Hex form is an 'x'
/// followed by hex digits, each covering four positions low bit first
/// ("x5" == "1010"); its length is four times the digit count.
BitPattern parse_pattern(std::string_view text);

/// Binary literal, position 0 first. Inverse of the plain parse form.
std::string to_binary_string(const BitPattern& p);

/// Hex literal with 'x' prefix. Defined for lengths divisible by four.
std::string to_hex_string(const BitPattern& p);

/// Hash functor for unordered containers keyed by pattern.
struct BitPatternHash {
    std::size_t operator()(const BitPattern& p) const noexcept;
};

}  // namespace sdm
