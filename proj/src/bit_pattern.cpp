#include "sdm/bit_pattern.hpp"

#include <bit>
#include <stdexcept>

#include "sdm/random.hpp"

namespace sdm {
namespace {

std::size_t word_count(std::size_t length) { return (length + 63) / 64; }

/// Mask selecting the in-range bits of the final word.
std::uint64_t tail_mask(std::size_t length) {
    const std::size_t used = length % 64;
    return used == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << used) - 1;
}

int hex_digit_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

BitPattern BitPattern::zeros(std::size_t length) {
    if (length == 0) {
        throw std::invalid_argument("BitPattern: length must be positive");
    }
    return BitPattern(length, std::vector<std::uint64_t>(word_count(length), 0));
}

BitPattern BitPattern::from_positions(std::size_t length, std::span<const std::size_t> positions) {
    BitPattern p = zeros(length);
    for (const std::size_t pos : positions) {
        p.set_bit(pos, true);
    }
    return p;
}

BitPattern BitPattern::from_words(std::size_t length, std::vector<std::uint64_t> words) {
    if (length == 0) {
        throw std::invalid_argument("BitPattern: length must be positive");
    }
    if (words.size() != word_count(length)) {
        throw std::invalid_argument("BitPattern: word count does not match length");
    }
    if ((words.back() & ~tail_mask(length)) != 0) {
        throw std::invalid_argument("BitPattern: bits set beyond pattern length");
    }
    return BitPattern(length, std::move(words));
}

void BitPattern::check_pos(std::size_t pos) const {
    if (pos >= length_) {
        throw std::out_of_range("BitPattern: position out of range");
    }
}

bool BitPattern::bit(std::size_t pos) const {
    check_pos(pos);
    return (words_[pos / 64] >> (pos % 64)) & 1u;
}

void BitPattern::set_bit(std::size_t pos, bool value) {
    check_pos(pos);
    const std::uint64_t mask = std::uint64_t{1} << (pos % 64);
    if (value) {
        words_[pos / 64] |= mask;
    } else {
        words_[pos / 64] &= ~mask;
    }
}

void BitPattern::flip_bit(std::size_t pos) {
    check_pos(pos);
    words_[pos / 64] ^= std::uint64_t{1} << (pos % 64);
}

BitPattern BitPattern::with_flipped(std::span<const std::size_t> positions) const {
    BitPattern out = *this;
    for (const std::size_t pos : positions) {
        out.flip_bit(pos);
    }
    return out;
}

std::size_t qfactor(const BitPattern& p) {
    std::size_t count = 0;
    for (const std::uint64_t w : p.words()) {
        count += static_cast<std::size_t>(std::popcount(w));
    }
    return count;
}

std::size_t hamming(const BitPattern& a, const BitPattern& b) {
    if (a.length() != b.length()) {
        throw std::invalid_argument("hamming: patterns differ in length");
    }
    const auto wa = a.words();
    const auto wb = b.words();
    std::size_t distance = 0;
    for (std::size_t i = 0; i < wa.size(); ++i) {
        distance += static_cast<std::size_t>(std::popcount(wa[i] ^ wb[i]));
    }
    return distance;
}

BitPattern complement(const BitPattern& p) {
    std::vector<std::uint64_t> words(p.words().begin(), p.words().end());
    for (auto& w : words) {
        w = ~w;
    }
    const std::size_t used = p.length() % 64;
    if (used != 0) {
        words.back() &= (std::uint64_t{1} << used) - 1;
    }
    return BitPattern::from_words(p.length(), std::move(words));
}

BitPattern parse_pattern(std::string_view text) {
    if (text.empty()) {
        throw std::invalid_argument("parse_pattern: empty literal");
    }
    if (text.front() == 'x' || text.front() == 'X') {
        const std::string_view digits = text.substr(1);
        if (digits.empty()) {
            throw std::invalid_argument("parse_pattern: hex literal has no digits");
        }
        BitPattern p = BitPattern::zeros(digits.size() * 4);
        for (std::size_t i = 0; i < digits.size(); ++i) {
            const int v = hex_digit_value(digits[i]);
            if (v < 0) {
                throw std::invalid_argument("parse_pattern: invalid hex digit '" +
                                            std::string(1, digits[i]) + "'");
            }
            for (std::size_t b = 0; b < 4; ++b) {
                if ((v >> b) & 1) {
                    p.set_bit(i * 4 + b, true);
                }
            }
        }
        return p;
    }
    BitPattern p = BitPattern::zeros(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '1') {
            p.set_bit(i, true);
        } else if (text[i] != '0') {
            throw std::invalid_argument("parse_pattern: invalid character '" +
                                        std::string(1, text[i]) + "' in binary literal");
        }
    }
    return p;
}

std::string to_binary_string(const BitPattern& p) {
    std::string out(p.length(), '0');
    for (std::size_t i = 0; i < p.length(); ++i) {
        if (p.bit(i)) {
            out[i] = '1';
        }
    }
    return out;
}

std::string to_hex_string(const BitPattern& p) {
    if (p.length() % 4 != 0) {
        throw std::invalid_argument("to_hex_string: length must be a multiple of four");
    }
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out = "x";
    out.reserve(1 + p.length() / 4);
    for (std::size_t i = 0; i < p.length(); i += 4) {
        int v = 0;
        for (std::size_t b = 0; b < 4; ++b) {
            if (p.bit(i + b)) {
                v |= 1 << b;
            }
        }
        out.push_back(kDigits[v]);
    }
    return out;
}

std::size_t BitPatternHash::operator()(const BitPattern& p) const noexcept {
    std::uint64_t h = mix64(p.length());
    for (const std::uint64_t w : p.words()) {
        h = mix64(h ^ w);
    }
    return static_cast<std::size_t>(h);
}

}  // namespace sdm
