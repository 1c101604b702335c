#include <numeric>

#include "doctest.h"
#include "fdgs/decompose.hpp"

using namespace fdgs;

namespace {
const Params t1 = Params::profile("T1");
}

TEST_CASE("weight sequences match the closed form") {
    CHECK(decomp_weights(2) == std::vector<uint32_t>{1, 1});
    CHECK(decomp_weights(3) == std::vector<uint32_t>{2, 1});
    CHECK(decomp_weights(7) == std::vector<uint32_t>{4, 2, 1});
    CHECK(decomp_weights(52) == std::vector<uint32_t>{26, 13, 7, 3, 2, 1});
    CHECK(decomp_weights(2458) ==
          std::vector<uint32_t>{1229, 615, 307, 154, 77, 38, 19, 10, 5, 2, 1, 1});
    CHECK(decomp_len(3) == 2);
    CHECK(decomp_len(2458) == 12);

    for (uint32_t B = 1; B <= 80; ++B) {
        auto w = decomp_weights(B);
        CHECK(w.size() == decomp_len(B));
        CHECK(std::accumulate(w.begin(), w.end(), 0u) == B);
    }
}

TEST_CASE("every bounded integer decomposes and recombines") {
    for (uint32_t B : {2u, 3u, 7u, 52u}) {
        auto w = decomp_weights(B);
        for (int64_t v = -int64_t(B); v <= int64_t(B); ++v) {
            TernVec d = int_decompose(v, B);
            REQUIRE(d.size() == w.size());
            int64_t sum = 0;
            for (size_t j = 0; j < w.size(); ++j) {
                CHECK(d[j] >= -1);
                CHECK(d[j] <= 1);
                sum += int64_t(w[j]) * d[j];
            }
            CHECK(sum == v);
        }
    }
    CHECK(int_decompose(-5, 7) == TernVec{-1, 0, -1});
    CHECK_THROWS_AS(int_decompose(8, 7), FdgsError);
    CHECK_THROWS_AS(int_decompose(-8, 7), FdgsError);
}

TEST_CASE("decomp_matrix recombines stacked digit blocks") {
    const uint32_t B = 52, rows = 4;
    IntMat H = decomp_matrix(rows, B);
    uint32_t delta = decomp_len(B);
    REQUIRE(H.rows == rows);
    REQUIRE(H.cols == rows * delta);

    std::vector<int64_t> values = {-52, 13, 0, 27};
    std::vector<int8_t> digits;
    for (int64_t v : values) {
        TernVec d = int_decompose(v, B);
        digits.insert(digits.end(), d.begin(), d.end());
    }
    for (uint32_t r = 0; r < rows; ++r) {
        int64_t acc = 0;
        for (uint32_t c = 0; c < H.cols; ++c) acc += int64_t(H.at(r, c)) * digits[c];
        CHECK(acc == values[r]);
    }
}

TEST_CASE("binary decomposition inverts through the gadget") {
    Rng rng(9);
    ZqMat G = gadget_matrix(t1);
    REQUIRE(G.rows == t1.n);
    REQUIRE(G.cols == t1.nk());
    for (int trial = 0; trial < 20; ++trial) {
        ZqVec v = sample_uniform_vector(rng, t1.n, t1.q);
        BitVec bits = bin_decompose(v, t1);
        REQUIRE(bits.size() == t1.nk());
        CHECK(bin_compose(bits, t1) == v);
        CHECK(mat_bits(G, bits, t1.q) == v);
    }
}

TEST_CASE("binary expansion is least-significant-bit first") {
    ZqVec v(t1.n, 0);
    v[0] = 5;  // 101 in binary
    BitVec bits = bin_decompose(v, t1);
    CHECK(bits[0] == 1);
    CHECK(bits[1] == 0);
    CHECK(bits[2] == 1);
    for (uint32_t j = 3; j < t1.k; ++j) CHECK(bits[j] == 0);
}

TEST_CASE("identity paths are most-significant-bit first") {
    CHECK(index_to_path(5, 3) == BitVec{1, 0, 1});
    CHECK(index_to_path(0, 3) == BitVec{0, 0, 0});
    CHECK(index_to_path(7, 3) == BitVec{1, 1, 1});
    for (uint32_t ell : {3u, 4u})
        for (uint32_t j = 0; j < (1u << ell); ++j)
            CHECK(path_to_index(index_to_path(j, ell)) == j);
}
