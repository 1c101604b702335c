#include "fdgs/decompose.hpp"

namespace fdgs {

ZqMat gadget_matrix(const Params& p) {
    ZqMat G(p.n, p.nk());
    for (uint32_t b = 0; b < p.n; ++b)
        for (uint32_t j = 0; j < p.k; ++j) G.at(b, b * p.k + j) = (1u << j) % p.q;
    return G;
}

BitVec bin_decompose(const ZqVec& v, const Params& p) {
    require(v.size() == p.n, Err::DimensionMismatch, "bin_decompose expects length n");
    BitVec out(p.nk());
    for (uint32_t i = 0; i < p.n; ++i) {
        require(v[i] < p.q, Err::InvalidResidue, "bin_decompose entry >= q");
        for (uint32_t j = 0; j < p.k; ++j) out[i * p.k + j] = (v[i] >> j) & 1;
    }
    return out;
}

ZqVec bin_compose(const BitVec& bits, const Params& p) {
    require(bits.size() == p.nk(), Err::DimensionMismatch, "bin_compose expects length nk");
    ZqVec out(p.n, 0);
    for (uint32_t i = 0; i < p.n; ++i) {
        uint32_t acc = 0;
        for (uint32_t j = 0; j < p.k; ++j)
            if (bits[i * p.k + j]) acc += 1u << j;
        out[i] = acc % p.q;
    }
    return out;
}

uint32_t decomp_len(uint32_t B) {
    require(B >= 1, Err::OutOfRange, "decomposition bound must be positive");
    uint32_t d = 0;
    while (B >> d) ++d;  // floor(log2 B) + 1
    return d;
}

std::vector<uint32_t> decomp_weights(uint32_t B) {
    uint32_t d = decomp_len(B);
    std::vector<uint32_t> w(d);
    for (uint32_t j = 1; j <= d; ++j) w[j - 1] = uint32_t((uint64_t(B) + (1u << (j - 1))) >> j);
    return w;
}

TernVec int_decompose(int64_t v, uint32_t B) {
    require(v <= int64_t(B) && -v <= int64_t(B), Err::OutOfRange, "|v| > B");
    auto w = decomp_weights(B);
    uint64_t rem = uint64_t(v < 0 ? -v : v);
    TernVec out(w.size(), 0);
    for (size_t j = 0; j < w.size(); ++j)
        if (rem >= w[j]) {
            out[j] = 1;
            rem -= w[j];
        }
    // the weight sequence makes the greedy walk exact for every |v| <= B
    require(rem == 0, Err::OutOfRange, "greedy decomposition did not terminate at 0");
    if (v < 0)
        for (auto& d : out) d = int8_t(-d);
    return out;
}

IntMat decomp_matrix(uint32_t rows, uint32_t B) {
    auto w = decomp_weights(B);
    uint32_t d = uint32_t(w.size());
    IntMat H(rows, rows * d);
    for (uint32_t r = 0; r < rows; ++r)
        for (uint32_t j = 0; j < d; ++j) H.at(r, r * d + j) = int32_t(w[j]);
    return H;
}

BitVec index_to_path(uint32_t index, uint32_t ell) {
    require(index < (1u << ell), Err::OutOfRange, "leaf index out of range");
    BitVec bits(ell);
    for (uint32_t i = 0; i < ell; ++i) bits[i] = (index >> (ell - 1 - i)) & 1;
    return bits;
}

uint32_t path_to_index(const BitVec& bits) {
    uint32_t v = 0;
    for (uint8_t b : bits) {
        require(b <= 1, Err::InvalidResidue, "non-bit path entry");
        v = (v << 1) | b;
    }
    return v;
}

} // namespace fdgs
