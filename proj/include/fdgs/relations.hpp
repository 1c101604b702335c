#pragma once

#include <cstdint>
#include <vector>

#include "fdgs/accumulator.hpp"
#include "fdgs/decompose.hpp"
#include "fdgs/linalg.hpp"
#include "fdgs/params.hpp"
#include "fdgs/regev.hpp"
#include "fdgs/stern.hpp"

namespace fdgs {

// Weight-extension gadgets.  A binary vector is padded to a fixed length and
// an exact target weight so that membership in the padded set is permutation
// invariant.  Infeasible extensions throw CannotExtend; in particular a
// zero vector cannot be padded to weight w inside length(v) + w - 1 slots,
// which is exactly the non-zero guarantee the leaf and denial gadgets rely on.
BitVec extend_weight(const BitVec& v, uint32_t target_len, uint32_t target_weight);

// Ternary digits extended to length 3*len with exactly len of each symbol,
// mapped into residues (1, 0, q-1); fill order is -1s, then 1s, then 0s.
ZqVec ternary_expand(const TernVec& digits, uint32_t q);

// Ternary vector of length ell extended to 3*ell - 1 coordinates holding
// exactly ell ones, ell minus-ones and ell-1 zeros; feasible iff some entry
// is non-zero, otherwise CannotExtend.
ZqVec ternary_expand_nonzero(const TernVec& v, uint32_t q);

// ---------------------------------------------------------------------------
// Signing relation: the signer knows a key x, a leaf accumulated in the
// current root, the authentication path for it, and the randomness of two
// ciphertexts that both encrypt the path bits.

// Column layout of the signing witness vector.  Per tree level below the root
// the node value, its placed copy, and the placed sibling; then the leaf
// (non-zero gadget length 2nk-1) and its placed copy, the key, the two
// encryption randomness blocks, and one two-coordinate direction block per
// level.
struct GsLayout {
    uint32_t ell = 0;
    uint32_t nk = 0;
    uint32_t m = 0;
    uint32_t mE = 0;

    uint32_t node() const { return 2 * nk; }       // extended node length
    uint32_t leaf() const { return 2 * nk - 1; }   // extended leaf length

    uint32_t v_star(uint32_t i) const;  // i in [1, ell-1]
    uint32_t v_hat(uint32_t i) const;   // i in [1, ell-1]
    uint32_t w_hat(uint32_t i) const;   // i in [1, ell]
    uint32_t p_star() const;
    uint32_t p_hat() const;
    uint32_t x_star() const;
    uint32_t r_star(uint32_t b) const;  // b in {1, 2}
    uint32_t j_block(uint32_t i) const; // i in [1, ell]
    uint32_t dim() const;

    static GsLayout from(const Params& p);
};

struct GsWitness {
    BitVec x;                       // m bits
    BitVec path;                    // ell direction bits, top level first
    std::vector<BitVec> nodes;      // on-path labels v_1..v_{ell-1}
    std::vector<BitVec> siblings;   // w_1..w_ell in level order
    BitVec leaf;                    // nk bits, non-zero
    BitVec r1, r2;                  // m_E bits each
};

class GsStatement : public SternStatement {
public:
    GsStatement(const Params& p, const HashKey& key, const BitVec& root,
                const TracingPublicKey& tpk, const CiphertextPair& ct);

    SternPerm sample_perm(Rng& rng) const override;
    std::vector<uint32_t> coordinate_map(const SternPerm& perm) const override;
    bool is_valid(const ZqVec& t) const override;
    ZqVec sample_valid(Rng& rng) const override;
    uint32_t perm_bit_count() const override;
    std::vector<uint32_t> perm_lengths() const override;

    const GsLayout& layout() const { return lay_; }
    const Params& params() const { return par_; }

private:
    Params par_;
    GsLayout lay_;
};

// Witness assembly recomputes the leaf from the key and the on-path labels
// from the leaf and siblings; it does not check the root.
GsWitness assemble_gs_witness(const Params& p, const HashKey& key, const BitVec& x,
                              const MembershipWitness& w, const BitVec& r1, const BitVec& r2);

ZqVec pack_gs_witness(const GsLayout& lay, const GsWitness& wit);
GsWitness open_gs_witness(const GsLayout& lay, const ZqVec& z);

// Direct re-verification of an opened witness against the public instance,
// independent of the argument system.
bool check_gs_witness(const Params& p, const HashKey& key, const BitVec& root,
                      const TracingPublicKey& tpk, const CiphertextPair& ct,
                      const GsWitness& wit);

// ---------------------------------------------------------------------------
// Tracing relation: the opener knows the decryption key behind P1 and a small
// offset vector explaining the announced plaintext.  Bounded integers enter
// the system through ternary digit decomposition; the matrix columns carry
// the digit weights and 2*digits zero columns absorb the symbol-count pad.

struct TraceWitness {
    IntMat S1;               // n x ell
    IntMat E1;               // ell x m_E
    std::vector<int32_t> y;  // ell offsets, |y_j| <= ceil(q/5)
};

class TraceStatement : public SternStatement {
public:
    TraceStatement(const Params& p, const ZqMat& B, const ZqMat& P1, const Ciphertext& ct,
                   const BitVec& plain);

    SternPerm sample_perm(Rng& rng) const override;
    std::vector<uint32_t> coordinate_map(const SternPerm& perm) const override;
    bool is_valid(const ZqVec& t) const override;
    ZqVec sample_valid(Rng& rng) const override;
    uint32_t perm_bit_count() const override { return 0; }
    std::vector<uint32_t> perm_lengths() const override;

    uint32_t digits() const { return digits_; }
    const Params& params() const { return par_; }

private:
    Params par_;
    uint32_t digits_ = 0;  // total ternary digits before the pad
};

TraceWitness make_trace_witness(const Params& p, const TracingSecretKey& sk,
                                const Ciphertext& ct, const BitVec& plain);

ZqVec pack_trace_witness(const TraceStatement& st, const TraceWitness& wit);
TraceWitness open_trace_witness(const TraceStatement& st, const ZqVec& z);

bool check_trace_witness(const Params& p, const ZqMat& B, const ZqMat& P1, const Ciphertext& ct,
                         const BitVec& plain, const TraceWitness& wit);

// ---------------------------------------------------------------------------
// Denial relation: same key material, plus a non-zero ternary difference b
// between the true plaintext and the denied identity.  b rides along through
// the non-zero extension gadget, so b = 0 cannot even be packed.

struct DenialWitness {
    TraceWitness base;
    TernVec b;  // ell entries, the plaintext minus the denied identity
};

class DenialStatement : public SternStatement {
public:
    DenialStatement(const Params& p, const ZqMat& B, const ZqMat& P1, const Ciphertext& ct,
                    const BitVec& denied);

    SternPerm sample_perm(Rng& rng) const override;
    std::vector<uint32_t> coordinate_map(const SternPerm& perm) const override;
    bool is_valid(const ZqVec& t) const override;
    ZqVec sample_valid(Rng& rng) const override;
    uint32_t perm_bit_count() const override { return 0; }
    std::vector<uint32_t> perm_lengths() const override;

    uint32_t digits() const { return digits_; }
    const Params& params() const { return par_; }

private:
    Params par_;
    uint32_t digits_ = 0;
};

DenialWitness make_denial_witness(const Params& p, const TracingSecretKey& sk,
                                  const Ciphertext& ct, const BitVec& plain,
                                  const BitVec& denied);

ZqVec pack_denial_witness(const DenialStatement& st, const DenialWitness& wit);
DenialWitness open_denial_witness(const DenialStatement& st, const ZqVec& z);

bool check_denial_witness(const Params& p, const ZqMat& B, const ZqMat& P1, const Ciphertext& ct,
                          const BitVec& denied, const DenialWitness& wit);

} // namespace fdgs
