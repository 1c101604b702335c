#pragma once

#include <cstdint>
#include <vector>

#include "fdgs/linalg.hpp"
#include "fdgs/params.hpp"

namespace fdgs {

// Powers-of-2 gadget: n blocks of the row (1, 2, 4, ..., 2^(k-1)).
// For any v in Z_q^n, gadget_matrix * bin_decompose(v) == v (mod q).
ZqMat gadget_matrix(const Params& p);

// Least-significant-bit-first binary expansion, k bits per coordinate.
BitVec bin_decompose(const ZqVec& v, const Params& p);

// Inverse of bin_decompose (per-coordinate bit recomposition mod q).
ZqVec bin_compose(const BitVec& bits, const Params& p);

// delta_B = floor(log2 B) + 1 digits; weight sequence B_j = floor((B+2^(j-1))/2^j)
// sums to exactly B, so every v in [-B, B] has a ternary digit vector with
// sum_j B_j * digit_j = v.
uint32_t decomp_len(uint32_t B);
std::vector<uint32_t> decomp_weights(uint32_t B);

// Greedy on |v|, digits negated for negative v.
TernVec int_decompose(int64_t v, uint32_t B);

// Block-diagonal matrix of the weight rows: H * concatenated-digits = values.
IntMat decomp_matrix(uint32_t rows, uint32_t B);

// Identity bits (j_1..j_ell), most significant first: index 5 at ell=3 is (1,0,1).
BitVec index_to_path(uint32_t index, uint32_t ell);
uint32_t path_to_index(const BitVec& bits);

} // namespace fdgs
