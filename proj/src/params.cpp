#include "fdgs/params.hpp"

#include "fdgs/errors.hpp"

namespace fdgs {

namespace {

uint32_t ceil_log2(uint32_t v) {
    uint32_t bits = 0;
    uint32_t x = v - 1;  // smallest k with 2^k >= v
    while (x) {
        ++bits;
        x >>= 1;
    }
    return bits;
}

bool is_prime(uint32_t v) {
    if (v < 2) return false;
    for (uint32_t d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

Params derive(uint32_t n, uint32_t q, uint32_t ell, uint32_t beta, uint32_t kappa,
              const std::string& name) {
    Params p;
    p.profile_name = name;
    p.n = n;
    p.q = q;
    p.k = ceil_log2(q);
    p.m = 2 * n * p.k;
    p.ell = ell;
    p.N = 1u << ell;
    p.m_E = 2 * (n + ell) * p.k;
    p.beta = beta;
    p.kappa = kappa;
    return p;
}

} // namespace

Params Params::profile(const std::string& name) {
    Params p;
    if (name == "T1")
        p = derive(4, 12289, 3, 3, 10, "T1");
    else if (name == "T2")
        p = derive(8, 12289, 4, 3, 16, "T2");
    else
        fail(Err::BadProfile, "unknown profile '" + name + "'");
    p.validate();
    return p;
}

Params Params::custom(uint32_t n, uint32_t q, uint32_t ell, uint32_t beta,
                      uint32_t kappa, const std::string& name) {
    Params p = derive(n, q, ell, beta, kappa, name);
    p.validate();
    return p;
}

void Params::validate() const {
    require(n >= 1, Err::BadProfile, "n must be positive");
    require(q >= 3 && q % 2 == 1 && is_prime(q), Err::BadProfile, "q must be an odd prime >= 3");
    require(k == ceil_log2(q), Err::BadProfile, "k != ceil(log2 q)");
    require(m == 2 * n * k, Err::BadProfile, "m != 2nk");
    require(ell >= 1 && ell < 31, Err::BadProfile, "ell out of range");
    require(N == (1u << ell), Err::BadProfile, "N != 2^ell");
    require(m_E == 2 * (n + ell) * k, Err::BadProfile, "m_E != 2(n+ell)k");
    require(beta >= 1, Err::BadProfile, "beta must be positive");
    require(kappa >= 1, Err::BadProfile, "kappa must be positive");
    // decryption correctness margin and the tracing gap
    require(uint64_t(beta) * m_E < q_fifth(), Err::BadProfile, "beta*m_E >= ceil(q/5)");
    require(2 * uint64_t(q_fifth()) < half_q(), Err::BadProfile, "2*ceil(q/5) >= floor(q/2)");
}

uint32_t Params::profile_id() const {
    if (profile_name == "T1") return 1;
    if (profile_name == "T2") return 2;
    return 0;
}

bool operator==(const Params& a, const Params& b) {
    return a.n == b.n && a.q == b.q && a.k == b.k && a.m == b.m && a.ell == b.ell &&
           a.N == b.N && a.m_E == b.m_E && a.beta == b.beta && a.kappa == b.kappa &&
           a.profile_name == b.profile_name;
}

} // namespace fdgs
