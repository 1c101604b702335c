#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fdgs/accumulator.hpp"
#include "fdgs/commit.hpp"
#include "fdgs/params.hpp"
#include "fdgs/regev.hpp"
#include "fdgs/relations.hpp"
#include "fdgs/rng.hpp"
#include "fdgs/stern.hpp"

namespace fdgs {

// Common reference material: the profile, the hashing key shared by the
// accumulator and the member key equation, and the commitment key.
struct PublicParams {
    Params par;
    HashKey hk;
    ComKey com;
};

PublicParams setup(const Params& par, uint64_t seed);

// Group public key as distributed to members and verifiers.  Built in two
// steps: the group manager publishes everything except the tracing key, the
// tracing manager completes it.
struct GroupPublicKey {
    PublicParams pp;
    ZqVec mpk;  // hash of the manager's master key
    bool tpk_present = false;
    TracingPublicKey tpk;
};

struct GmKeys {
    BitVec msk;  // m bits
    ZqVec mpk;   // A * msk
};

GmKeys gm_keygen(const PublicParams& pp, Rng& rng);

// Registration table: one slot per potential member.  A slot is registered
// once its public key is non-zero; the epoch field records the join epoch and
// is bookkeeping only.
struct RegEntry {
    BitVec upk;      // nk bits, all-zero while the slot is free
    uint32_t epoch = 0;
};

struct RegTable {
    std::vector<RegEntry> entries;
    uint32_t counter = 0;  // next free slot
    uint32_t epoch = 0;    // current epoch
};

// Manager-side mutable state: the accumulator tree plus the table.
struct GroupState {
    MerkleTree tree;
    RegTable reg;
};

GroupState empty_group(const PublicParams& pp);

// Epoch broadcast: the accumulated root and a membership witness per active
// slot.  Epoch 0 carries no witnesses, so nobody can sign before the first
// update.
struct GroupInfo {
    uint32_t epoch = 0;
    BitVec root;
    std::vector<std::optional<MembershipWitness>> witnesses;
};

GroupInfo initial_info(const PublicParams& pp, const GroupState& st);

// User key pair; the public key is resampled while it hashes to zero.
struct UserKey {
    BitVec x;  // m bits
    BitVec p;  // nk bits, non-zero
};

UserKey user_keygen(const PublicParams& pp, Rng& rng);

// Issues the next slot to the given public key and accumulates it.  Throws
// GroupFull when no slot is free and InvalidKey for a malformed key.  The new
// member stays inactive until the next epoch update.
uint32_t join_issue(const PublicParams& pp, GroupState& st, const BitVec& upk);

// Revokes the listed members (UnknownMember for unissued slots), advances the
// epoch, and rebuilds witnesses for every active slot.
GroupInfo group_update(const PublicParams& pp, GroupState& st,
                       const std::vector<uint32_t>& revoke);

bool is_active(const GroupInfo& info, const RegTable& reg, uint32_t uid);

struct Signature {
    CiphertextPair ct;  // both encrypt the signer's identity bits
    NizkProof proof;
};

// nullopt when the epoch grants no witness to this member; StaleWitness when
// the held witness does not verify against the current root.
std::optional<Signature> sign(const GroupPublicKey& gpk, const GroupInfo& info, uint32_t uid,
                              const BitVec& x, std::span<const uint8_t> message, Rng& rng);

bool verify(const GroupPublicKey& gpk, const GroupInfo& info, std::span<const uint8_t> message,
            const Signature& sig);

struct TraceResult {
    uint32_t uid = 0;
    BitVec plain;     // decrypted identity bits
    NizkProof proof;  // correct-decryption argument
};

// Decrypts the first ciphertext and proves the decryption; nullopt when the
// decrypted slot was never issued.  The signature is not re-verified here.
std::optional<TraceResult> trace(const GroupPublicKey& gpk, const TracingSecretKey& tsk,
                                 const GroupInfo& info, const RegTable& reg,
                                 std::span<const uint8_t> message, const Signature& sig,
                                 Rng& rng);

bool judge(const GroupPublicKey& gpk, uint32_t uid, const GroupInfo& info,
           std::span<const uint8_t> message, const Signature& sig, const NizkProof& proof);

// Denial: proves the signature does not trace to the given identity.
// nullopt when it does trace there (the difference vector is zero).
std::optional<NizkProof> d_trace(const GroupPublicKey& gpk, const TracingSecretKey& tsk,
                                 const GroupInfo& info, uint32_t denied_uid,
                                 std::span<const uint8_t> message, const Signature& sig,
                                 Rng& rng);

// 0 whenever the signature itself rejects; otherwise the denial argument
// decides.
bool d_judge(const GroupPublicKey& gpk, const GroupInfo& info, uint32_t denied_uid,
             std::span<const uint8_t> message, const Signature& sig, const NizkProof& proof);

// Statement and context builders shared by signing, verification, tracing and
// the file loaders.
GsStatement make_sign_statement(const GroupPublicKey& gpk, const GroupInfo& info,
                                const CiphertextPair& ct);
TraceStatement make_trace_statement(const GroupPublicKey& gpk, const Signature& sig,
                                    const BitVec& plain);
DenialStatement make_denial_statement(const GroupPublicKey& gpk, const Signature& sig,
                                      const BitVec& denied);

std::vector<uint8_t> sign_context(const GroupPublicKey& gpk, const GroupInfo& info,
                                  std::span<const uint8_t> message, const CiphertextPair& ct);
std::vector<uint8_t> trace_context(const GroupPublicKey& gpk, const GroupInfo& info,
                                   std::span<const uint8_t> message, const Signature& sig,
                                   const BitVec& plain);
std::vector<uint8_t> denial_context(const GroupPublicKey& gpk, const GroupInfo& info,
                                    std::span<const uint8_t> message, const Signature& sig,
                                    const BitVec& denied);

} // namespace fdgs
