#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fdgs/errors.hpp"
#include "fdgs/rng.hpp"

namespace fdgs {

// Residues live in [0, q-1]; reduction happens at every public operation
// boundary so no entry ever leaves that range.
using ZqVec = std::vector<uint32_t>;
using BitVec = std::vector<uint8_t>;   // entries in {0,1}
using TernVec = std::vector<int8_t>;   // entries in {-1,0,1}

// Row-major dense matrix over Z_q.  Dims are fixed at construction.
struct ZqMat {
    uint32_t rows = 0;
    uint32_t cols = 0;
    std::vector<uint32_t> a;

    ZqMat() = default;
    ZqMat(uint32_t r, uint32_t c) : rows(r), cols(c), a(size_t(r) * c, 0) {}

    uint32_t& at(uint32_t r, uint32_t c) { return a[size_t(r) * cols + c]; }
    uint32_t at(uint32_t r, uint32_t c) const { return a[size_t(r) * cols + c]; }
    const uint32_t* row(uint32_t r) const { return a.data() + size_t(r) * cols; }
    uint32_t* row(uint32_t r) { return a.data() + size_t(r) * cols; }
};

// Small signed matrix (noise, decomposition weights); bounds checked by users.
struct IntMat {
    uint32_t rows = 0;
    uint32_t cols = 0;
    std::vector<int32_t> a;

    IntMat() = default;
    IntMat(uint32_t r, uint32_t c) : rows(r), cols(c), a(size_t(r) * c, 0) {}

    int32_t& at(uint32_t r, uint32_t c) { return a[size_t(r) * cols + c]; }
    int32_t at(uint32_t r, uint32_t c) const { return a[size_t(r) * cols + c]; }
};

inline uint32_t mod_q(int64_t v, uint32_t q) {
    int64_t r = v % int64_t(q);
    return uint32_t(r < 0 ? r + q : r);
}

// centered representative in (-q/2, q/2]
inline int32_t center(uint32_t v, uint32_t q) {
    return v > q / 2 ? int32_t(v) - int32_t(q) : int32_t(v);
}

ZqVec mat_vec(const ZqMat& M, const ZqVec& v, uint32_t q);
ZqVec mat_bits(const ZqMat& M, const BitVec& v, uint32_t q);   // v in {0,1}
ZqMat mat_mul(const ZqMat& A, const ZqMat& B, uint32_t q);
ZqVec vec_add(const ZqVec& a, const ZqVec& b, uint32_t q);
ZqVec vec_sub(const ZqVec& a, const ZqVec& b, uint32_t q);
ZqVec vec_scale(const ZqVec& a, uint32_t s, uint32_t q);

ZqMat transpose(const ZqMat& M);
ZqMat to_zq(const IntMat& M, uint32_t q);

ZqMat sample_uniform_matrix(Rng& rng, uint32_t rows, uint32_t cols, uint32_t q);
ZqVec sample_uniform_vector(Rng& rng, uint32_t len, uint32_t q);
BitVec sample_uniform_bits(Rng& rng, uint32_t len);
IntMat sample_bounded(Rng& rng, uint32_t rows, uint32_t cols, uint32_t beta);

inline bool is_binary(const ZqVec& v) {
    for (uint32_t x : v)
        if (x > 1) return false;
    return true;
}

inline uint32_t hamming_weight(const BitVec& v) {
    uint32_t w = 0;
    for (uint8_t b : v) w += b;
    return w;
}

uint32_t inf_norm(const IntMat& M);

// Gauss-Jordan over the prime field F_q.  Row-reduces [M | u] once; solve()
// then returns one solution (free variables zero) per call in O(rows*cols).
class LinearSolver {
public:
    LinearSolver(const ZqMat& M, uint32_t q);

    // nullopt iff M*x = u is inconsistent
    std::optional<ZqVec> solve(const ZqVec& u) const;

private:
    uint32_t q_;
    uint32_t cols_;
    ZqMat rref_;                       // reduced rows, pivot columns normalized
    std::vector<uint32_t> pivot_col_;  // for each reduced row
    ZqMat transform_;                  // rref_ = transform_ * M
};

uint32_t mod_pow(uint32_t base, uint32_t exp, uint32_t q);
inline uint32_t mod_inv(uint32_t v, uint32_t q) { return mod_pow(v, q - 2, q); }

} // namespace fdgs
