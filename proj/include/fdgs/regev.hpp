#pragma once

#include <cstdint>
#include <optional>

#include "fdgs/linalg.hpp"
#include "fdgs/params.hpp"
#include "fdgs/rng.hpp"

namespace fdgs {

// Double-encryption key material.  Public side B (n x m_E) and the two mask
// matrices P_i = S_i^T B + E_i (ell x m_E); secret side keeps only the first
// pair (S_1, E_1).  The discarded second pair is retained in memory for test
// fixtures but never serialized with the secret key.
struct TracingPublicKey {
    ZqMat B;
    ZqMat P1;
    ZqMat P2;
};

struct TracingSecretKey {
    IntMat S1;  // n x ell, entries in [-beta, beta]
    IntMat E1;  // ell x m_E, entries in [-beta, beta]
};

struct TracingKeys {
    TracingPublicKey pk;
    TracingSecretKey sk;
    std::optional<IntMat> S2, E2;  // test fixtures only
};

// One ciphertext: c1 = B*r (length n), c2 = P*r + floor(q/2)*msg (length ell).
struct Ciphertext {
    ZqVec c1;
    ZqVec c2;
};

struct CiphertextPair {
    Ciphertext first;   // under P1; the tracing side decrypts this one
    Ciphertext second;  // under P2
};

struct EncryptionResult {
    CiphertextPair ct;
    BitVec r1;  // binary randomness, part of the signing witness
    BitVec r2;
};

TracingKeys tm_keygen(const Params& p, uint64_t seed);

EncryptionResult encrypt_pair(const TracingPublicKey& pk, const BitVec& msg, const Params& p,
                              Rng& rng);

// e = c2 - S1^T c1 mod q centered to (-q/2, q/2]; bit j is 0 iff |e_j| < q/4.
BitVec decrypt(const TracingSecretKey& sk, const Ciphertext& c, const Params& p);

} // namespace fdgs
