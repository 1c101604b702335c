#include "fdgs/regev.hpp"

namespace fdgs {

TracingKeys tm_keygen(const Params& p, uint64_t seed) {
    Rng rng(seed);
    TracingKeys keys;
    keys.pk.B = sample_uniform_matrix(rng, p.n, p.m_E, p.q);
    IntMat S1 = sample_bounded(rng, p.n, p.ell, p.beta);
    IntMat E1 = sample_bounded(rng, p.ell, p.m_E, p.beta);
    IntMat S2 = sample_bounded(rng, p.n, p.ell, p.beta);
    IntMat E2 = sample_bounded(rng, p.ell, p.m_E, p.beta);
    auto mask = [&](const IntMat& S, const IntMat& E) {
        // P = S^T B + E mod q
        ZqMat P(p.ell, p.m_E);
        for (uint32_t r = 0; r < p.ell; ++r)
            for (uint32_t c = 0; c < p.m_E; ++c) {
                int64_t acc = E.at(r, c);
                for (uint32_t i = 0; i < p.n; ++i)
                    acc += int64_t(S.at(i, r)) * keys.pk.B.at(i, c);
                P.at(r, c) = mod_q(acc, p.q);
            }
        return P;
    };
    keys.pk.P1 = mask(S1, E1);
    keys.pk.P2 = mask(S2, E2);
    keys.sk.S1 = std::move(S1);
    keys.sk.E1 = std::move(E1);
    keys.S2 = std::move(S2);
    keys.E2 = std::move(E2);
    return keys;
}

EncryptionResult encrypt_pair(const TracingPublicKey& pk, const BitVec& msg, const Params& p,
                              Rng& rng) {
    require(msg.size() == p.ell, Err::DimensionMismatch, "message must have ell bits");
    EncryptionResult out;
    out.r1 = sample_uniform_bits(rng, p.m_E);
    out.r2 = sample_uniform_bits(rng, p.m_E);
    auto encrypt_one = [&](const ZqMat& P, const BitVec& r) {
        Ciphertext c;
        c.c1 = mat_bits(pk.B, r, p.q);
        c.c2 = mat_bits(P, r, p.q);
        for (uint32_t j = 0; j < p.ell; ++j)
            if (msg[j]) c.c2[j] = (c.c2[j] + p.half_q()) % p.q;
        return c;
    };
    out.ct.first = encrypt_one(pk.P1, out.r1);
    out.ct.second = encrypt_one(pk.P2, out.r2);
    return out;
}

BitVec decrypt(const TracingSecretKey& sk, const Ciphertext& c, const Params& p) {
    require(c.c1.size() == p.n && c.c2.size() == p.ell, Err::DimensionMismatch,
            "ciphertext component sizes");
    BitVec msg(p.ell);
    for (uint32_t j = 0; j < p.ell; ++j) {
        int64_t acc = c.c2[j];
        for (uint32_t i = 0; i < p.n; ++i) acc -= int64_t(sk.S1.at(i, j)) * c.c1[i];
        int32_t e = center(mod_q(acc, p.q), p.q);
        uint32_t mag = uint32_t(e < 0 ? -e : e);
        msg[j] = mag < (p.q + 3) / 4 ? 0 : 1;  // |e| < q/4 decodes to 0
    }
    return msg;
}

} // namespace fdgs
