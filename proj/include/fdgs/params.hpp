#pragma once

#include <cstdint>
#include <string>

namespace fdgs {

// All scheme constants for one parameter profile, plus the derived widths.
// Every field is fixed at construction; validate() enforces the profile
// invariants (q odd prime, k = ceil(log2 q), m = 2nk, m_E = 2(n+l)k, N = 2^l,
// beta*m_E < ceil(q/5), 2*ceil(q/5) < floor(q/2)).
//
// The shipped profiles are desk-scale: they exercise every algorithm but are
// far below any cryptographic hardness margin.  Nothing built on them is
// secure; they exist so the correctness experiments run in seconds.
struct Params {
    std::string profile_name;
    uint32_t n = 0;      // lattice rows
    uint32_t q = 0;      // odd prime modulus
    uint32_t k = 0;      // bits per Z_q element, ceil(log2 q)
    uint32_t m = 0;      // hash-layer width, 2nk
    uint32_t ell = 0;    // identity bit-length
    uint32_t N = 0;      // group capacity, 2^ell
    uint32_t m_E = 0;    // encryption-layer width, 2(n+ell)k
    uint32_t beta = 0;   // noise bound; noise is uniform on [-beta, beta]
    uint32_t kappa = 0;  // Fiat-Shamir repetition count

    static Params profile(const std::string& name);     // "T1" or "T2"
    static Params custom(uint32_t n, uint32_t q, uint32_t ell, uint32_t beta,
                         uint32_t kappa, const std::string& name);

    void validate() const;  // throws BadProfile on any violation

    uint32_t nk() const { return n * k; }
    uint32_t half_q() const { return q / 2; }              // floor(q/2)
    uint32_t q_fifth() const { return (q + 4) / 5; }       // ceil(q/5)
    uint32_t profile_id() const;                           // 1=T1, 2=T2, 0=custom
};

bool operator==(const Params& a, const Params& b);

} // namespace fdgs
