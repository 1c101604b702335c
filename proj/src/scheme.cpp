#include "fdgs/scheme.hpp"

#include "fdgs/errors.hpp"
#include "fdgs/io.hpp"

namespace fdgs {

namespace {

constexpr uint32_t kKeyResampleCap = 64;

BitVec zero_leaf(const Params& p) { return BitVec(p.nk(), 0); }

bool leaf_occupied(const MerkleTree& tree, uint32_t j, const Params& p) {
    const BitVec& leaf = tree.leaf(j);
    return hamming_weight(leaf) != 0 && leaf.size() == p.nk();
}

void write_context_header(ByteWriter& w, const char* tag, const GroupPublicKey& gpk,
                          const GroupInfo& info, std::span<const uint8_t> message) {
    w.str(tag);
    write_gpk_body(w, gpk);
    write_info_body(w, info);
    w.u64(message.size());
    w.raw(message);
}

} // namespace

PublicParams setup(const Params& par, uint64_t seed) {
    par.validate();
    PublicParams pp;
    pp.par = par;
    Rng rng(seed);
    pp.hk = t_setup(par, rng.next_u64());
    pp.com = com_keygen(ComMode::Sponge, par, rng.next_u64());
    return pp;
}

GmKeys gm_keygen(const PublicParams& pp, Rng& rng) {
    GmKeys keys;
    keys.msk = sample_uniform_bits(rng, pp.par.m);
    keys.mpk = mat_bits(pp.hk.A, keys.msk, pp.par.q);
    return keys;
}

GroupState empty_group(const PublicParams& pp) {
    GroupState st;
    std::vector<BitVec> leaves(pp.par.N, zero_leaf(pp.par));
    st.tree = t_acc(pp.hk, leaves, pp.par);
    st.reg.entries.assign(pp.par.N, RegEntry{zero_leaf(pp.par), 0});
    st.reg.counter = 0;
    st.reg.epoch = 0;
    return st;
}

GroupInfo initial_info(const PublicParams& pp, const GroupState& st) {
    GroupInfo info;
    info.epoch = 0;
    info.root = st.tree.root();
    info.witnesses.assign(pp.par.N, std::nullopt);
    return info;
}

UserKey user_keygen(const PublicParams& pp, Rng& rng) {
    for (uint32_t attempt = 0; attempt < kKeyResampleCap; ++attempt) {
        UserKey key;
        key.x = sample_uniform_bits(rng, pp.par.m);
        key.p = bin_decompose(mat_bits(pp.hk.A, key.x, pp.par.q), pp.par);
        if (hamming_weight(key.p) != 0) return key;
    }
    fail(Err::ResamplingExhausted, "no usable key after repeated sampling");
}

uint32_t join_issue(const PublicParams& pp, GroupState& st, const BitVec& upk) {
    require(upk.size() == pp.par.nk(), Err::InvalidKey, "member key size");
    for (uint8_t b : upk) require(b <= 1, Err::InvalidKey, "member key not binary");
    require(hamming_weight(upk) != 0, Err::InvalidKey, "member key hashes to zero");
    require(st.reg.counter < pp.par.N, Err::GroupFull, "no free slot");

    uint32_t uid = st.reg.counter;
    BitVec path = index_to_path(uid, pp.par.ell);
    t_update(st.tree, pp.hk, path, upk, pp.par);
    st.reg.entries[uid] = RegEntry{upk, st.reg.epoch};
    st.reg.counter += 1;
    return uid;
}

GroupInfo group_update(const PublicParams& pp, GroupState& st,
                       const std::vector<uint32_t>& revoke) {
    for (uint32_t uid : revoke) {
        require(uid < st.reg.counter, Err::UnknownMember, "revoking an unissued slot");
        t_update(st.tree, pp.hk, index_to_path(uid, pp.par.ell), zero_leaf(pp.par), pp.par);
    }
    st.reg.epoch += 1;

    GroupInfo info;
    info.epoch = st.reg.epoch;
    info.root = st.tree.root();
    info.witnesses.assign(pp.par.N, std::nullopt);
    for (uint32_t j = 0; j < st.reg.counter; ++j)
        if (leaf_occupied(st.tree, j, pp.par)) info.witnesses[j] = t_witness(st.tree, j);
    return info;
}

bool is_active(const GroupInfo& info, const RegTable& reg, uint32_t uid) {
    if (uid >= info.witnesses.size() || uid >= reg.entries.size()) return false;
    return info.witnesses[uid].has_value() && hamming_weight(reg.entries[uid].upk) != 0;
}

GsStatement make_sign_statement(const GroupPublicKey& gpk, const GroupInfo& info,
                                const CiphertextPair& ct) {
    require(gpk.tpk_present, Err::InvalidKey, "tracing public key not installed");
    return GsStatement(gpk.pp.par, gpk.pp.hk, info.root, gpk.tpk, ct);
}

TraceStatement make_trace_statement(const GroupPublicKey& gpk, const Signature& sig,
                                    const BitVec& plain) {
    require(gpk.tpk_present, Err::InvalidKey, "tracing public key not installed");
    return TraceStatement(gpk.pp.par, gpk.tpk.B, gpk.tpk.P1, sig.ct.first, plain);
}

DenialStatement make_denial_statement(const GroupPublicKey& gpk, const Signature& sig,
                                      const BitVec& denied) {
    require(gpk.tpk_present, Err::InvalidKey, "tracing public key not installed");
    return DenialStatement(gpk.pp.par, gpk.tpk.B, gpk.tpk.P1, sig.ct.first, denied);
}

std::vector<uint8_t> sign_context(const GroupPublicKey& gpk, const GroupInfo& info,
                                  std::span<const uint8_t> message, const CiphertextPair& ct) {
    const uint32_t q = gpk.pp.par.q;
    ByteWriter w;
    w.str("fdgs/ctx/sign");
    w.u64(message.size());
    w.raw(message);
    w.zq_mat(gpk.pp.hk.A, q);
    w.bit_vec(info.root);
    w.zq_mat(gpk.tpk.B, q);
    w.zq_mat(gpk.tpk.P1, q);
    w.zq_mat(gpk.tpk.P2, q);
    w.zq_vec(ct.first.c1, q);
    w.zq_vec(ct.first.c2, q);
    w.zq_vec(ct.second.c1, q);
    w.zq_vec(ct.second.c2, q);
    return std::move(w).take();
}

std::vector<uint8_t> trace_context(const GroupPublicKey& gpk, const GroupInfo& info,
                                   std::span<const uint8_t> message, const Signature& sig,
                                   const BitVec& plain) {
    ByteWriter w;
    write_context_header(w, "fdgs/ctx/trace", gpk, info, message);
    write_signature_body(w, sig, gpk.pp.par.q);
    w.bit_vec(plain);
    return std::move(w).take();
}

std::vector<uint8_t> denial_context(const GroupPublicKey& gpk, const GroupInfo& info,
                                    std::span<const uint8_t> message, const Signature& sig,
                                    const BitVec& denied) {
    ByteWriter w;
    write_context_header(w, "fdgs/ctx/denial", gpk, info, message);
    write_signature_body(w, sig, gpk.pp.par.q);
    w.bit_vec(denied);
    return std::move(w).take();
}

std::optional<Signature> sign(const GroupPublicKey& gpk, const GroupInfo& info, uint32_t uid,
                              const BitVec& x, std::span<const uint8_t> message, Rng& rng) {
    const Params& p = gpk.pp.par;
    require(gpk.tpk_present, Err::InvalidKey, "tracing public key not installed");
    require(uid < p.N, Err::OutOfRange, "identity out of range");
    require(x.size() == p.m, Err::DimensionMismatch, "signing key size");
    require(info.witnesses.size() == p.N, Err::DimensionMismatch, "epoch info shape");

    if (!info.witnesses[uid].has_value()) return std::nullopt;
    const MembershipWitness& mw = *info.witnesses[uid];

    BitVec leaf = bin_decompose(mat_bits(gpk.pp.hk.A, x, p.q), p);
    require(t_verify(gpk.pp.hk, info.root, leaf, mw, p), Err::StaleWitness,
            "membership witness rejected by the current root");
    require(mw.path_bits == index_to_path(uid, p.ell), Err::StaleWitness,
            "witness path does not match the identity");

    BitVec idbits = index_to_path(uid, p.ell);
    EncryptionResult enc = encrypt_pair(gpk.tpk, idbits, p, rng);

    Signature sig;
    sig.ct = enc.ct;
    GsStatement st = make_sign_statement(gpk, info, sig.ct);
    GsWitness wit = assemble_gs_witness(p, gpk.pp.hk, x, mw, enc.r1, enc.r2);
    ZqVec z = pack_gs_witness(st.layout(), wit);
    auto ctx = sign_context(gpk, info, message, sig.ct);
    sig.proof = fs_prove(st, gpk.pp.com, z, ctx, p.kappa, rng);
    return sig;
}

bool verify(const GroupPublicKey& gpk, const GroupInfo& info, std::span<const uint8_t> message,
            const Signature& sig) {
    require(gpk.tpk_present, Err::InvalidKey, "tracing public key not installed");
    try {
        GsStatement st = make_sign_statement(gpk, info, sig.ct);
        auto ctx = sign_context(gpk, info, message, sig.ct);
        return fs_verify(st, gpk.pp.com, sig.proof, ctx, gpk.pp.par.kappa);
    } catch (const FdgsError&) {
        return false;  // malformed ciphertext shapes reject rather than throw
    }
}

std::optional<TraceResult> trace(const GroupPublicKey& gpk, const TracingSecretKey& tsk,
                                 const GroupInfo& info, const RegTable& reg,
                                 std::span<const uint8_t> message, const Signature& sig,
                                 Rng& rng) {
    const Params& p = gpk.pp.par;
    require(gpk.tpk_present, Err::InvalidKey, "tracing public key not installed");

    TraceResult res;
    res.plain = decrypt(tsk, sig.ct.first, p);
    res.uid = path_to_index(res.plain);
    if (res.uid >= reg.counter) return std::nullopt;
    if (hamming_weight(reg.entries[res.uid].upk) == 0) return std::nullopt;

    TraceStatement st = make_trace_statement(gpk, sig, res.plain);
    TraceWitness wit = make_trace_witness(p, tsk, sig.ct.first, res.plain);
    ZqVec z = pack_trace_witness(st, wit);
    auto ctx = trace_context(gpk, info, message, sig, res.plain);
    res.proof = fs_prove(st, gpk.pp.com, z, ctx, p.kappa, rng);
    return res;
}

bool judge(const GroupPublicKey& gpk, uint32_t uid, const GroupInfo& info,
           std::span<const uint8_t> message, const Signature& sig, const NizkProof& proof) {
    const Params& p = gpk.pp.par;
    if (uid >= p.N) return false;
    BitVec plain = index_to_path(uid, p.ell);
    try {
        TraceStatement st = make_trace_statement(gpk, sig, plain);
        auto ctx = trace_context(gpk, info, message, sig, plain);
        return fs_verify(st, gpk.pp.com, proof, ctx, p.kappa);
    } catch (const FdgsError&) {
        return false;
    }
}

std::optional<NizkProof> d_trace(const GroupPublicKey& gpk, const TracingSecretKey& tsk,
                                 const GroupInfo& info, uint32_t denied_uid,
                                 std::span<const uint8_t> message, const Signature& sig,
                                 Rng& rng) {
    const Params& p = gpk.pp.par;
    require(gpk.tpk_present, Err::InvalidKey, "tracing public key not installed");
    require(denied_uid < p.N, Err::OutOfRange, "identity out of range");

    BitVec plain = decrypt(tsk, sig.ct.first, p);
    BitVec denied = index_to_path(denied_uid, p.ell);
    if (plain == denied) return std::nullopt;  // the signature does trace there

    DenialStatement st = make_denial_statement(gpk, sig, denied);
    DenialWitness wit = make_denial_witness(p, tsk, sig.ct.first, plain, denied);
    ZqVec z = pack_denial_witness(st, wit);
    auto ctx = denial_context(gpk, info, message, sig, denied);
    return fs_prove(st, gpk.pp.com, z, ctx, p.kappa, rng);
}

bool d_judge(const GroupPublicKey& gpk, const GroupInfo& info, uint32_t denied_uid,
             std::span<const uint8_t> message, const Signature& sig, const NizkProof& proof) {
    const Params& p = gpk.pp.par;
    if (denied_uid >= p.N) return false;
    if (!verify(gpk, info, message, sig)) return false;
    BitVec denied = index_to_path(denied_uid, p.ell);
    try {
        DenialStatement st = make_denial_statement(gpk, sig, denied);
        auto ctx = denial_context(gpk, info, message, sig, denied);
        return fs_verify(st, gpk.pp.com, proof, ctx, p.kappa);
    } catch (const FdgsError&) {
        return false;
    }
}

} // namespace fdgs
