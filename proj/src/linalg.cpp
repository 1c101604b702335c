#include "fdgs/linalg.hpp"

namespace fdgs {

ZqVec mat_vec(const ZqMat& M, const ZqVec& v, uint32_t q) {
    require(M.cols == v.size(), Err::DimensionMismatch, "mat_vec shape");
    ZqVec out(M.rows);
    for (uint32_t r = 0; r < M.rows; ++r) {
        const uint32_t* row = M.row(r);
        uint64_t acc = 0;
        for (uint32_t c = 0; c < M.cols; ++c) {
            acc += uint64_t(row[c]) * v[c];
            if (acc >> 62) acc %= q;  // q^2 < 2^28: overflow is impossible before 2^34 terms
        }
        out[r] = uint32_t(acc % q);
    }
    return out;
}

ZqVec mat_bits(const ZqMat& M, const BitVec& v, uint32_t q) {
    require(M.cols == v.size(), Err::DimensionMismatch, "mat_bits shape");
    ZqVec out(M.rows);
    for (uint32_t r = 0; r < M.rows; ++r) {
        const uint32_t* row = M.row(r);
        uint64_t acc = 0;
        for (uint32_t c = 0; c < M.cols; ++c)
            if (v[c]) acc += row[c];
        out[r] = uint32_t(acc % q);
    }
    return out;
}

ZqMat mat_mul(const ZqMat& A, const ZqMat& B, uint32_t q) {
    require(A.cols == B.rows, Err::DimensionMismatch, "mat_mul shape");
    ZqMat out(A.rows, B.cols);
    for (uint32_t r = 0; r < A.rows; ++r)
        for (uint32_t i = 0; i < A.cols; ++i) {
            uint64_t ar = A.at(r, i);
            if (!ar) continue;
            const uint32_t* brow = B.row(i);
            uint32_t* orow = out.row(r);
            for (uint32_t c = 0; c < B.cols; ++c)
                orow[c] = uint32_t((orow[c] + ar * brow[c]) % q);
        }
    return out;
}

ZqVec vec_add(const ZqVec& a, const ZqVec& b, uint32_t q) {
    require(a.size() == b.size(), Err::DimensionMismatch, "vec_add length");
    ZqVec out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = (a[i] + b[i]) % q;
    return out;
}

ZqVec vec_sub(const ZqVec& a, const ZqVec& b, uint32_t q) {
    require(a.size() == b.size(), Err::DimensionMismatch, "vec_sub length");
    ZqVec out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = (a[i] + q - b[i]) % q;
    return out;
}

ZqVec vec_scale(const ZqVec& a, uint32_t s, uint32_t q) {
    ZqVec out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = uint32_t(uint64_t(a[i]) * s % q);
    return out;
}

ZqMat transpose(const ZqMat& M) {
    ZqMat out(M.cols, M.rows);
    for (uint32_t r = 0; r < M.rows; ++r)
        for (uint32_t c = 0; c < M.cols; ++c) out.at(c, r) = M.at(r, c);
    return out;
}

ZqMat to_zq(const IntMat& M, uint32_t q) {
    ZqMat out(M.rows, M.cols);
    for (size_t i = 0; i < M.a.size(); ++i) out.a[i] = mod_q(M.a[i], q);
    return out;
}

ZqMat sample_uniform_matrix(Rng& rng, uint32_t rows, uint32_t cols, uint32_t q) {
    ZqMat out(rows, cols);
    for (auto& v : out.a) v = rng.zq(q);
    return out;
}

ZqVec sample_uniform_vector(Rng& rng, uint32_t len, uint32_t q) {
    ZqVec out(len);
    for (auto& v : out) v = rng.zq(q);
    return out;
}

BitVec sample_uniform_bits(Rng& rng, uint32_t len) {
    BitVec out(len);
    for (auto& b : out) b = rng.bit();
    return out;
}

IntMat sample_bounded(Rng& rng, uint32_t rows, uint32_t cols, uint32_t beta) {
    IntMat out(rows, cols);
    for (auto& v : out.a) v = rng.bounded(beta);
    return out;
}

uint32_t inf_norm(const IntMat& M) {
    uint32_t best = 0;
    for (int32_t v : M.a) best = std::max(best, uint32_t(v < 0 ? -v : v));
    return best;
}

uint32_t mod_pow(uint32_t base, uint32_t exp, uint32_t q) {
    uint64_t acc = 1, b = base % q;
    while (exp) {
        if (exp & 1) acc = acc * b % q;
        b = b * b % q;
        exp >>= 1;
    }
    return uint32_t(acc);
}

LinearSolver::LinearSolver(const ZqMat& M, uint32_t q) : q_(q), cols_(M.cols), rref_(M) {
    // transform_ tracks the row operations so solve() can reduce any
    // right-hand side without re-eliminating.
    transform_ = ZqMat(M.rows, M.rows);
    for (uint32_t r = 0; r < M.rows; ++r) transform_.at(r, r) = 1;

    uint32_t rank = 0;
    for (uint32_t col = 0; col < cols_ && rank < rref_.rows; ++col) {
        uint32_t pivot = rank;
        while (pivot < rref_.rows && rref_.at(pivot, col) == 0) ++pivot;
        if (pivot == rref_.rows) continue;
        if (pivot != rank) {
            for (uint32_t c = 0; c < cols_; ++c) std::swap(rref_.at(rank, c), rref_.at(pivot, c));
            for (uint32_t c = 0; c < transform_.cols; ++c)
                std::swap(transform_.at(rank, c), transform_.at(pivot, c));
        }
        uint64_t inv = mod_inv(rref_.at(rank, col), q_);
        for (uint32_t c = col; c < cols_; ++c)
            rref_.at(rank, c) = uint32_t(inv * rref_.at(rank, c) % q_);
        for (uint32_t c = 0; c < transform_.cols; ++c)
            transform_.at(rank, c) = uint32_t(inv * transform_.at(rank, c) % q_);
        for (uint32_t r = 0; r < rref_.rows; ++r) {
            if (r == rank) continue;
            uint64_t f = rref_.at(r, col);
            if (!f) continue;
            uint64_t neg = q_ - f;  // subtracting f*pivot_row == adding (q-f)*pivot_row
            const uint32_t* prow = rref_.row(rank);
            uint32_t* rrow = rref_.row(r);
            for (uint32_t c = col; c < cols_; ++c)
                rrow[c] = uint32_t((rrow[c] + neg * prow[c]) % q_);
            const uint32_t* ptr = transform_.row(rank);
            uint32_t* rtr = transform_.row(r);
            for (uint32_t c = 0; c < transform_.cols; ++c)
                rtr[c] = uint32_t((rtr[c] + neg * ptr[c]) % q_);
        }
        pivot_col_.push_back(col);
        ++rank;
    }
}

std::optional<ZqVec> LinearSolver::solve(const ZqVec& u) const {
    require(u.size() == transform_.cols, Err::DimensionMismatch, "solve rhs length");
    ZqVec rhs = mat_vec(transform_, u, q_);
    uint32_t rank = uint32_t(pivot_col_.size());
    for (uint32_t r = rank; r < rhs.size(); ++r)
        if (rhs[r] != 0) return std::nullopt;  // 0 = nonzero row: inconsistent
    ZqVec x(cols_, 0);
    for (uint32_t r = 0; r < rank; ++r) x[pivot_col_[r]] = rhs[r];
    return x;
}

} // namespace fdgs
