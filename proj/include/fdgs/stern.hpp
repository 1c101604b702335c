#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "fdgs/commit.hpp"
#include "fdgs/encode.hpp"
#include "fdgs/linalg.hpp"
#include "fdgs/rng.hpp"

namespace fdgs {

// Structured mask permutation: optional challenge bits plus a fixed-order
// list of index permutations.  The owning statement defines how these compose
// into one coordinate permutation of the witness vector.
struct SternPerm {
    std::vector<uint8_t> bits;
    std::vector<std::vector<uint32_t>> perms;
};

bool operator==(const SternPerm& a, const SternPerm& b);

// One relation instance: prove knowledge of z with z in VALID and M*z = u.
// Subclasses supply the VALID predicate, the mask-permutation family, and its
// action as a coordinate permutation (out[i] = in[map[i]]).  VALID must be
// closed under every such permutation, which is what makes the masked reveal
// of challenge 1 leak nothing but membership.
class SternStatement {
public:
    virtual ~SternStatement() = default;

    const ZqMat& M() const { return M_; }
    const ZqVec& u() const { return u_; }
    uint32_t dim() const { return D_; }
    uint32_t modulus() const { return q_; }

    virtual SternPerm sample_perm(Rng& rng) const = 0;
    virtual std::vector<uint32_t> coordinate_map(const SternPerm& perm) const = 0;
    virtual bool is_valid(const ZqVec& t) const = 0;
    virtual ZqVec sample_valid(Rng& rng) const = 0;

    // shape of a serialized permutation, for deserialization and sizing
    virtual uint32_t perm_bit_count() const = 0;
    virtual std::vector<uint32_t> perm_lengths() const = 0;

    // cached helpers; first call is not thread-safe
    const Digest& instance_digest() const;
    const LinearSolver& solver() const;

protected:
    void set_system(ZqMat M, ZqVec u, uint32_t q);

private:
    ZqMat M_;
    ZqVec u_;
    uint32_t D_ = 0;
    uint32_t q_ = 0;
    mutable std::optional<Digest> digest_;
    mutable std::unique_ptr<LinearSolver> solver_;
};

struct RoundCommitment {
    Digest c1{}, c2{}, c3{};
};

struct SternResponse {
    uint8_t ch = 0;
    SternPerm eta;              // challenges 2 and 3
    ZqVec v1;                   // ch1: t_z; ch2: z + r; ch3: r
    ZqVec v2;                   // ch1: t_r; otherwise empty
    std::vector<uint8_t> rho_a; // ch1: rho2; ch2: rho1; ch3: rho1
    std::vector<uint8_t> rho_b; // ch1: rho3; ch2: rho3; ch3: rho2
};

struct SternProverRound {
    SternPerm eta;
    std::vector<uint32_t> sigma;  // eta's coordinate map
    ZqVec r;
    ZqVec z;
    std::array<std::vector<uint8_t>, 3> rho;
    RoundCommitment cmt;
};

// Commitment move: C1 = COM(eta, M*r), C2 = COM(perm(r)), C3 = COM(perm(z+r)).
SternProverRound prove_round(const SternStatement& st, const ComKey& ck, const ZqVec& z,
                             Rng& rng);

SternResponse respond(const SternStatement& st, const SternProverRound& round, uint8_t ch);

// The three challenge checks; malformed responses reject, never throw.
bool verify_round(const SternStatement& st, const ComKey& ck, const RoundCommitment& cmt,
                  uint8_t ch, const SternResponse& rsp);

struct NizkProof {
    std::vector<RoundCommitment> cmts;
    std::vector<uint8_t> challenges;
    std::vector<SternResponse> responses;
};

// kappa parallel rounds; challenges derived from
// SHAKE256(tag || context || all commitments || instance digest), mapped into
// {1,2,3} without modulo bias (bytes >= 243 rejected, 5 digits per byte).
NizkProof fs_prove(const SternStatement& st, const ComKey& ck, const ZqVec& z,
                   std::span<const uint8_t> context, uint32_t kappa, Rng& rng);

bool fs_verify(const SternStatement& st, const ComKey& ck, const NizkProof& proof,
               std::span<const uint8_t> context, uint32_t kappa);

std::vector<uint8_t> fs_challenges(const SternStatement& st, std::span<const uint8_t> context,
                                   const std::vector<RoundCommitment>& cmts, uint32_t kappa);

// Honest-verifier simulator.  simulate_commit draws the challenge it will not
// be able to answer; simulate_respond returns nullopt exactly on that
// challenge and an accepting response on the other two.
struct SternSimRound {
    uint8_t predicted = 0;
    RoundCommitment cmt;
    SternPerm eta;
    std::vector<uint32_t> sigma;
    ZqVec r;
    ZqVec z_alt;
    std::array<std::vector<uint8_t>, 3> rho;
};

SternSimRound simulate_commit(const SternStatement& st, const ComKey& ck, Rng& rng);

std::optional<SternResponse> simulate_respond(const SternStatement& st, const SternSimRound& sim,
                                              uint8_t ch);

// Three accepting responses for one commitment, challenges 1..3, yield a
// witness; any payload inconsistency would be a commitment collision and
// raises ExtractionFailed instead.
ZqVec extract(const SternStatement& st, const ComKey& ck, const RoundCommitment& cmt,
              const SternResponse& r1, const SternResponse& r2, const SternResponse& r3);

// serialization (statement supplies the permutation shape)
void write_perm(ByteWriter& w, const SternPerm& perm);
SternPerm read_perm(ByteReader& r, const SternStatement& st);
void write_proof(ByteWriter& w, const NizkProof& proof, uint32_t q);
NizkProof read_proof(ByteReader& r, const SternStatement& st);

// closed-form encoded sizes, used by the size-accounting checks
size_t perm_encoded_bytes(const SternStatement& st);
size_t response_encoded_bytes(const SternStatement& st, uint8_t ch);
double expected_proof_bytes(const SternStatement& st, uint32_t kappa);

} // namespace fdgs
