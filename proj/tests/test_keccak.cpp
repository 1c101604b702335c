#include <string>
#include <vector>

#include "doctest.h"
#include "fdgs/keccak.hpp"

using namespace fdgs;

namespace {

std::string hex(const std::vector<uint8_t>& bytes) {
    static const char* digits = "0123456789abcdef";
    std::string s;
    for (uint8_t b : bytes) {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 0xF]);
    }
    return s;
}

std::vector<uint8_t> bytes_of(const std::string& s) {
    return std::vector<uint8_t>(s.begin(), s.end());
}

} // namespace

TEST_CASE("shake128 empty input matches the standard vector") {
    CHECK(hex(shake128({}, 32)) ==
          "7f9c2ba4e88f827d616045507605853ed73b8093f6efbc88eb1a6eacfa66ef26");
}

TEST_CASE("shake256 empty input matches the standard vector") {
    CHECK(hex(shake256({}, 64)) ==
          "46b9dd2b0ba88d13233b3feb743eeb243fcd52ea62b81b82b50c27646ed5762f"
          "d75dc4ddd8c0f200cb05019d67b592f6fc821c49479ab48640292eacb3b7c4be");
}

TEST_CASE("absorbing in pieces equals absorbing at once") {
    auto whole = bytes_of("the quick brown fox jumps over the lazy dog");
    Shake a(Shake::Variant::Shake256);
    a.absorb(whole);
    Shake b(Shake::Variant::Shake256);
    b.absorb(whole.data(), 9);
    b.absorb(whole.data() + 9, 1);
    b.absorb(whole.data() + 10, whole.size() - 10);
    CHECK(a.squeeze(48) == b.squeeze(48));
}

TEST_CASE("streaming squeeze crosses the block boundary transparently") {
    auto input = bytes_of("stream");
    // 500 bytes spans several rate blocks for both variants
    for (auto v : {Shake::Variant::Shake128, Shake::Variant::Shake256}) {
        Shake one(v);
        one.absorb(input);
        auto all = one.squeeze(500);

        Shake piecewise(v);
        piecewise.absorb(input);
        std::vector<uint8_t> acc;
        while (acc.size() < 500) {
            size_t chunk = 1 + (acc.size() % 37);
            if (acc.size() + chunk > 500) chunk = 500 - acc.size();
            auto part = piecewise.squeeze(chunk);
            acc.insert(acc.end(), part.begin(), part.end());
        }
        CHECK(all == acc);
    }
}

TEST_CASE("variants disagree and inputs matter") {
    auto in = bytes_of("x");
    CHECK(shake128(in, 32) != shake256(in, 32));
    CHECK(shake256(in, 32) != shake256(bytes_of("y"), 32));
    CHECK(shake256(in, 32) == shake256(in, 32));
}

TEST_CASE("long inputs absorb across multiple blocks") {
    std::vector<uint8_t> big(1000, 0xAB);
    Shake a(Shake::Variant::Shake128);
    a.absorb(big);
    Shake b(Shake::Variant::Shake128);
    b.absorb(big.data(), 600);
    b.absorb(big.data() + 600, 400);
    CHECK(a.squeeze(64) == b.squeeze(64));
}
