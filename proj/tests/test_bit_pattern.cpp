#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "sdm/bit_pattern.hpp"
#include "sdm/random.hpp"
#include "sdm/sampling.hpp"

using namespace sdm;

TEST_CASE("zeros builds an all-zero pattern of the right shape") {
    const BitPattern p = BitPattern::zeros(130);
    CHECK(p.length() == 130);
    CHECK(p.words().size() == 3);
    CHECK(qfactor(p) == 0);
    CHECK_THROWS_AS(BitPattern::zeros(0), std::invalid_argument);
}

TEST_CASE("binary literals map the first character to position 0") {
    const BitPattern p = parse_pattern("1010");
    CHECK(p.bit(0));
    CHECK_FALSE(p.bit(1));
    CHECK(p.bit(2));
    CHECK_FALSE(p.bit(3));
    CHECK(to_binary_string(p) == "1010");
    CHECK_THROWS_AS(parse_pattern(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_pattern("10a1"), std::invalid_argument);
}

TEST_CASE("hex literals cover four positions per digit, low bit first") {
    CHECK(parse_pattern("x5") == parse_pattern("1010"));
    CHECK(to_hex_string(parse_pattern("1010")) == "x5");
    // 'f' sets all four positions of its group.
    CHECK(parse_pattern("xf0") == parse_pattern("11110000"));
    const BitPattern p = parse_pattern("x1234abcd");
    CHECK(parse_pattern(to_hex_string(p)) == p);
    CHECK(p.length() == 32);
    CHECK_THROWS_AS(parse_pattern("x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_pattern("xg"), std::invalid_argument);
    // Hex output is only defined when the length fills whole digits.
    CHECK_THROWS_AS(to_hex_string(parse_pattern("10100")), std::invalid_argument);
}

TEST_CASE("qfactor counts set bits") {
    CHECK(qfactor(parse_pattern("0000")) == 0);
    CHECK(qfactor(parse_pattern("1111")) == 4);
    CHECK(qfactor(parse_pattern("101100")) == 3);
}

TEST_CASE("hamming distance counts differing positions") {
    CHECK(hamming(parse_pattern("101100"), parse_pattern("100101")) == 2);
    CHECK(hamming(parse_pattern("1010"), parse_pattern("1010")) == 0);
    CHECK_THROWS_AS(hamming(parse_pattern("10"), parse_pattern("100")),
                    std::invalid_argument);
}

TEST_CASE("complement flips every bit") {
    const BitPattern p = parse_pattern("101100");
    CHECK(complement(p) == parse_pattern("010011"));
    CHECK(complement(complement(p)) == p);
    CHECK(hamming(p, complement(p)) == p.length());
    CHECK(qfactor(complement(p)) == p.length() - qfactor(p));

    RandomSource rng(99);
    const BitPattern q = random_pattern(256, rng);
    CHECK(hamming(q, complement(q)) == 256);
    CHECK(qfactor(complement(q)) == 256 - qfactor(q));
}

TEST_CASE("hamming is a metric on random 256-bit triples") {
    RandomSource rng(7);
    for (int i = 0; i < 50; ++i) {
        const BitPattern a = random_pattern(256, rng);
        const BitPattern b = random_pattern(256, rng);
        const BitPattern c = random_pattern(256, rng);
        CHECK(hamming(a, b) == hamming(b, a));
        CHECK(hamming(a, a) == 0);
        CHECK(hamming(a, c) <= hamming(a, b) + hamming(b, c));
        if (a != b) {
            CHECK(hamming(a, b) > 0);
        }
    }
}

TEST_CASE("bit accessors stay in range and round-trip") {
    BitPattern p = BitPattern::zeros(70);
    p.set_bit(0, true);
    p.set_bit(69, true);
    CHECK(p.bit(0));
    CHECK(p.bit(69));
    CHECK(qfactor(p) == 2);
    p.set_bit(69, false);
    CHECK_FALSE(p.bit(69));
    p.flip_bit(69);
    CHECK(p.bit(69));
    CHECK_THROWS_AS(p.bit(70), std::out_of_range);
    CHECK_THROWS_AS(p.set_bit(70, true), std::out_of_range);
}

TEST_CASE("with_flipped flips exactly the listed positions") {
    const BitPattern p = parse_pattern("000000");
    const std::vector<std::size_t> positions = {1, 4};
    CHECK(p.with_flipped(positions) == parse_pattern("010010"));
    CHECK(hamming(p, p.with_flipped(positions)) == 2);
    const std::vector<std::size_t> bad = {6};
    CHECK_THROWS_AS(p.with_flipped(bad), std::out_of_range);
}

TEST_CASE("from_words validates shape and pad bits") {
    CHECK(BitPattern::from_words(4, {0x5}) == parse_pattern("1010"));
    CHECK_THROWS_AS(BitPattern::from_words(4, {0x5, 0x0}), std::invalid_argument);
    // Bit 4 is outside a length-4 pattern.
    CHECK_THROWS_AS(BitPattern::from_words(4, {0x10}), std::invalid_argument);
}

TEST_CASE("from_positions is idempotent on duplicates") {
    const std::vector<std::size_t> positions = {2, 2, 5};
    CHECK(BitPattern::from_positions(6, positions) == parse_pattern("001001"));
}

TEST_CASE("hash distinguishes equal words at different lengths") {
    const BitPatternHash h;
    CHECK(h(parse_pattern("1010")) == h(parse_pattern("1010")));
    CHECK(h(BitPattern::zeros(63)) != h(BitPattern::zeros(64)));
}
