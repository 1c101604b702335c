#include "fdgs/io.hpp"

#include <cstdio>

#include "fdgs/errors.hpp"

namespace fdgs {

namespace {

constexpr uint32_t kFormatVersion = 1;

void write_header(ByteWriter& w, const char* magic, const Params& p) {
    uint8_t m[8] = {0};
    for (int i = 0; i < 8 && magic[i]; ++i) m[i] = uint8_t(magic[i]);
    w.raw(std::span<const uint8_t>(m, 8));
    w.u32(kFormatVersion);
    write_params_body(w, p);
}

Params read_header(ByteReader& r, const char* magic) {
    auto m = r.raw(8);
    uint8_t want[8] = {0};
    for (int i = 0; i < 8 && magic[i]; ++i) want[i] = uint8_t(magic[i]);
    for (int i = 0; i < 8; ++i)
        require(m[i] == want[i], Err::Malformed, "wrong file magic");
    require(r.u32() == kFormatVersion, Err::Malformed, "unsupported format version");
    return read_params_body(r);
}

Params read_header_expect(ByteReader& r, const char* magic, const Params& expected) {
    Params p = read_header(r, magic);
    require(p == expected, Err::BadProfile, "file profile does not match");
    return p;
}

void write_com_key(ByteWriter& w, const ComKey& ck) {
    w.u8(uint8_t(ck.mode));
    w.u32(uint32_t(ck.key.size()));
    w.raw(ck.key);
    w.u32(ck.n);
    w.u32(ck.q);
}

ComKey read_com_key(ByteReader& r) {
    ComKey ck;
    uint8_t mode = r.u8();
    require(mode <= 1, Err::Malformed, "unknown commitment mode");
    ck.mode = ComMode(mode);
    uint32_t len = r.u32();
    require(len == 32, Err::Malformed, "commitment key length");
    ck.key = r.raw(len);
    ck.n = r.u32();
    ck.q = r.u32();
    return ck;
}

void write_witness(ByteWriter& w, const MembershipWitness& mw) {
    w.bit_vec(mw.path_bits);
    w.u32(uint32_t(mw.siblings.size()));
    for (const auto& s : mw.siblings) w.bit_vec(s);
}

MembershipWitness read_witness(ByteReader& r, const Params& p) {
    MembershipWitness mw;
    mw.path_bits = r.bit_vec();
    require(mw.path_bits.size() == p.ell, Err::Malformed, "witness path length");
    uint32_t count = r.u32();
    require(count == p.ell, Err::Malformed, "witness sibling count");
    mw.siblings.resize(count);
    for (auto& s : mw.siblings) {
        s = r.bit_vec();
        require(s.size() == p.nk(), Err::Malformed, "sibling label size");
    }
    return mw;
}

void write_ciphertext(ByteWriter& w, const Ciphertext& c, uint32_t q) {
    w.zq_vec(c.c1, q);
    w.zq_vec(c.c2, q);
}

Ciphertext read_ciphertext(ByteReader& r, const Params& p) {
    Ciphertext c;
    c.c1 = r.zq_vec(p.q);
    c.c2 = r.zq_vec(p.q);
    require(c.c1.size() == p.n && c.c2.size() == p.ell, Err::Malformed, "ciphertext shape");
    return c;
}

} // namespace

std::vector<uint8_t> read_file(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    require(f != nullptr, Err::IoFailure, "cannot open '" + path + "' for reading");
    std::vector<uint8_t> bytes;
    uint8_t buf[65536];
    size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, f)) > 0) bytes.insert(bytes.end(), buf, buf + got);
    bool bad = std::ferror(f);
    std::fclose(f);
    require(!bad, Err::IoFailure, "read error on '" + path + "'");
    return bytes;
}

void write_file(const std::string& path, const std::vector<uint8_t>& bytes) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    require(f != nullptr, Err::IoFailure, "cannot open '" + path + "' for writing");
    size_t put = std::fwrite(bytes.data(), 1, bytes.size(), f);
    bool bad = put != bytes.size() || std::fclose(f) != 0;
    require(!bad, Err::IoFailure, "write error on '" + path + "'");
}

void write_params_body(ByteWriter& w, const Params& p) {
    w.str(p.profile_name);
    w.u32(p.n);
    w.u32(p.q);
    w.u32(p.ell);
    w.u32(p.beta);
    w.u32(p.kappa);
}

Params read_params_body(ByteReader& r) {
    std::string name = r.str();
    uint32_t n = r.u32(), q = r.u32(), ell = r.u32(), beta = r.u32(), kappa = r.u32();
    return Params::custom(n, q, ell, beta, kappa, name);
}

void write_gpk_body(ByteWriter& w, const GroupPublicKey& gpk) {
    const uint32_t q = gpk.pp.par.q;
    write_params_body(w, gpk.pp.par);
    w.zq_mat(gpk.pp.hk.A, q);
    write_com_key(w, gpk.pp.com);
    w.zq_vec(gpk.mpk, q);
    w.u8(gpk.tpk_present ? 1 : 0);
    if (gpk.tpk_present) {
        w.zq_mat(gpk.tpk.B, q);
        w.zq_mat(gpk.tpk.P1, q);
        w.zq_mat(gpk.tpk.P2, q);
    }
}

void write_info_body(ByteWriter& w, const GroupInfo& info) {
    w.u32(info.epoch);
    w.bit_vec(info.root);
    w.u32(uint32_t(info.witnesses.size()));
    for (const auto& mw : info.witnesses) {
        w.u8(mw.has_value() ? 1 : 0);
        if (mw.has_value()) write_witness(w, *mw);
    }
}

void write_signature_body(ByteWriter& w, const Signature& sig, uint32_t q) {
    write_ciphertext(w, sig.ct.first, q);
    write_ciphertext(w, sig.ct.second, q);
    write_proof(w, sig.proof, q);
}

std::vector<uint8_t> save_pp(const PublicParams& pp) {
    ByteWriter w;
    write_header(w, "FDGS-PP", pp.par);
    w.zq_mat(pp.hk.A, pp.par.q);
    write_com_key(w, pp.com);
    return std::move(w).take();
}

PublicParams load_pp(const std::vector<uint8_t>& bytes) {
    ByteReader r(bytes);
    PublicParams pp;
    pp.par = read_header(r, "FDGS-PP");
    pp.hk.A = r.zq_mat(pp.par.q);
    require(pp.hk.A.rows == pp.par.n && pp.hk.A.cols == pp.par.m, Err::Malformed,
            "hash key shape");
    pp.com = read_com_key(r);
    require(r.done(), Err::Malformed, "trailing bytes");
    return pp;
}

std::vector<uint8_t> save_gpk(const GroupPublicKey& gpk) {
    ByteWriter w;
    uint8_t m[8] = {'F', 'D', 'G', 'S', '-', 'G', 'P', 'K'};
    w.raw(std::span<const uint8_t>(m, 8));
    w.u32(kFormatVersion);
    write_gpk_body(w, gpk);
    return std::move(w).take();
}

GroupPublicKey load_gpk(const std::vector<uint8_t>& bytes) {
    ByteReader r(bytes);
    auto m = r.raw(8);
    const char* want = "FDGS-GPK";
    for (int i = 0; i < 8; ++i)
        require(m[i] == uint8_t(want[i]), Err::Malformed, "wrong file magic");
    require(r.u32() == kFormatVersion, Err::Malformed, "unsupported format version");

    GroupPublicKey gpk;
    gpk.pp.par = read_params_body(r);
    const Params& p = gpk.pp.par;
    gpk.pp.hk.A = r.zq_mat(p.q);
    require(gpk.pp.hk.A.rows == p.n && gpk.pp.hk.A.cols == p.m, Err::Malformed,
            "hash key shape");
    gpk.pp.com = read_com_key(r);
    gpk.mpk = r.zq_vec(p.q);
    require(gpk.mpk.size() == p.n, Err::Malformed, "manager key size");
    gpk.tpk_present = r.u8() != 0;
    if (gpk.tpk_present) {
        gpk.tpk.B = r.zq_mat(p.q);
        gpk.tpk.P1 = r.zq_mat(p.q);
        gpk.tpk.P2 = r.zq_mat(p.q);
        require(gpk.tpk.B.rows == p.n && gpk.tpk.B.cols == p.m_E, Err::Malformed,
                "public matrix shape");
        require(gpk.tpk.P1.rows == p.ell && gpk.tpk.P1.cols == p.m_E, Err::Malformed,
                "mask matrix shape");
        require(gpk.tpk.P2.rows == p.ell && gpk.tpk.P2.cols == p.m_E, Err::Malformed,
                "mask matrix shape");
    }
    require(r.done(), Err::Malformed, "trailing bytes");
    return gpk;
}

std::vector<uint8_t> save_msk(const Params& p, const BitVec& msk) {
    ByteWriter w;
    write_header(w, "FDGS-MSK", p);
    w.bit_vec(msk);
    return std::move(w).take();
}

BitVec load_msk(const std::vector<uint8_t>& bytes, const Params& p) {
    ByteReader r(bytes);
    read_header_expect(r, "FDGS-MSK", p);
    BitVec msk = r.bit_vec();
    require(msk.size() == p.m, Err::Malformed, "master key size");
    require(r.done(), Err::Malformed, "trailing bytes");
    return msk;
}

std::vector<uint8_t> save_tsk(const Params& p, const TracingSecretKey& tsk) {
    ByteWriter w;
    write_header(w, "FDGS-TSK", p);
    w.int_mat(tsk.S1);
    w.int_mat(tsk.E1);
    return std::move(w).take();
}

TracingSecretKey load_tsk(const std::vector<uint8_t>& bytes, const Params& p) {
    ByteReader r(bytes);
    read_header_expect(r, "FDGS-TSK", p);
    TracingSecretKey tsk;
    tsk.S1 = r.int_mat();
    tsk.E1 = r.int_mat();
    require(tsk.S1.rows == p.n && tsk.S1.cols == p.ell, Err::Malformed, "secret shape");
    require(tsk.E1.rows == p.ell && tsk.E1.cols == p.m_E, Err::Malformed, "noise shape");
    require(inf_norm(tsk.S1) <= p.beta && inf_norm(tsk.E1) <= p.beta, Err::Malformed,
            "secret out of bound");
    require(r.done(), Err::Malformed, "trailing bytes");
    return tsk;
}

std::vector<uint8_t> save_ukey(const Params& p, const UserKey& key) {
    ByteWriter w;
    write_header(w, "FDGS-UK", p);
    w.bit_vec(key.x);
    w.bit_vec(key.p);
    return std::move(w).take();
}

UserKey load_ukey(const std::vector<uint8_t>& bytes, const Params& p) {
    ByteReader r(bytes);
    read_header_expect(r, "FDGS-UK", p);
    UserKey key;
    key.x = r.bit_vec();
    key.p = r.bit_vec();
    require(key.x.size() == p.m && key.p.size() == p.nk(), Err::Malformed, "user key shape");
    require(r.done(), Err::Malformed, "trailing bytes");
    return key;
}

std::vector<uint8_t> save_reg(const Params& p, const RegTable& reg) {
    ByteWriter w;
    write_header(w, "FDGS-REG", p);
    w.u32(reg.epoch);
    w.u32(reg.counter);
    w.u32(uint32_t(reg.entries.size()));
    for (const auto& e : reg.entries) {
        w.bit_vec(e.upk);
        w.u32(e.epoch);
    }
    return std::move(w).take();
}

RegTable load_reg(const std::vector<uint8_t>& bytes, const Params& p) {
    ByteReader r(bytes);
    read_header_expect(r, "FDGS-REG", p);
    RegTable reg;
    reg.epoch = r.u32();
    reg.counter = r.u32();
    uint32_t count = r.u32();
    require(count == p.N && reg.counter <= p.N, Err::Malformed, "table shape");
    reg.entries.resize(count);
    for (auto& e : reg.entries) {
        e.upk = r.bit_vec();
        require(e.upk.size() == p.nk(), Err::Malformed, "slot key size");
        e.epoch = r.u32();
    }
    require(r.done(), Err::Malformed, "trailing bytes");
    return reg;
}

std::vector<uint8_t> save_tree(const Params& p, const MerkleTree& tree) {
    ByteWriter w;
    write_header(w, "FDGS-ACC", p);
    w.u32(uint32_t(tree.levels[tree.depth].size()));
    for (const auto& leaf : tree.levels[tree.depth]) w.bit_vec(leaf);
    return std::move(w).take();
}

MerkleTree load_tree(const std::vector<uint8_t>& bytes, const PublicParams& pp) {
    ByteReader r(bytes);
    read_header_expect(r, "FDGS-ACC", pp.par);
    uint32_t count = r.u32();
    require(count == pp.par.N, Err::Malformed, "leaf count");
    std::vector<BitVec> leaves(count);
    for (auto& leaf : leaves) {
        leaf = r.bit_vec();
        require(leaf.size() == pp.par.nk(), Err::Malformed, "leaf size");
    }
    require(r.done(), Err::Malformed, "trailing bytes");
    return t_acc(pp.hk, leaves, pp.par);
}

std::vector<uint8_t> save_info(const Params& p, const GroupInfo& info) {
    ByteWriter w;
    write_header(w, "FDGS-INF", p);
    write_info_body(w, info);
    return std::move(w).take();
}

GroupInfo load_info(const std::vector<uint8_t>& bytes, const Params& p) {
    ByteReader r(bytes);
    read_header_expect(r, "FDGS-INF", p);
    GroupInfo info;
    info.epoch = r.u32();
    info.root = r.bit_vec();
    require(info.root.size() == p.nk(), Err::Malformed, "root size");
    uint32_t count = r.u32();
    require(count == p.N, Err::Malformed, "slot count");
    info.witnesses.resize(count);
    for (auto& mw : info.witnesses) {
        if (r.u8() != 0)
            mw = read_witness(r, p);
        else
            mw = std::nullopt;
    }
    require(r.done(), Err::Malformed, "trailing bytes");
    return info;
}

std::vector<uint8_t> save_signature(const Params& p, const Signature& sig) {
    ByteWriter w;
    write_header(w, "FDGS-SIG", p);
    write_signature_body(w, sig, p.q);
    return std::move(w).take();
}

Signature load_signature(const std::vector<uint8_t>& bytes, const GroupPublicKey& gpk,
                         const GroupInfo& info) {
    ByteReader r(bytes);
    read_header_expect(r, "FDGS-SIG", gpk.pp.par);
    Signature sig;
    sig.ct.first = read_ciphertext(r, gpk.pp.par);
    sig.ct.second = read_ciphertext(r, gpk.pp.par);
    GsStatement st = make_sign_statement(gpk, info, sig.ct);
    sig.proof = read_proof(r, st);
    require(r.done(), Err::Malformed, "trailing bytes");
    return sig;
}

std::vector<uint8_t> save_trace_result(const Params& p, const TraceResult& res) {
    ByteWriter w;
    write_header(w, "FDGS-TRP", p);
    w.u32(res.uid);
    write_proof(w, res.proof, p.q);
    return std::move(w).take();
}

TraceResult load_trace_result(const std::vector<uint8_t>& bytes, const GroupPublicKey& gpk,
                              const Signature& sig) {
    const Params& p = gpk.pp.par;
    ByteReader r(bytes);
    read_header_expect(r, "FDGS-TRP", p);
    TraceResult res;
    res.uid = r.u32();
    require(res.uid < p.N, Err::Malformed, "identity out of range");
    res.plain = index_to_path(res.uid, p.ell);
    TraceStatement st = make_trace_statement(gpk, sig, res.plain);
    res.proof = read_proof(r, st);
    require(r.done(), Err::Malformed, "trailing bytes");
    return res;
}

std::vector<uint8_t> save_denial(const Params& p, uint32_t denied_uid, const NizkProof& proof) {
    ByteWriter w;
    write_header(w, "FDGS-DNP", p);
    w.u32(denied_uid);
    write_proof(w, proof, p.q);
    return std::move(w).take();
}

std::pair<uint32_t, NizkProof> load_denial(const std::vector<uint8_t>& bytes,
                                           const GroupPublicKey& gpk, const Signature& sig) {
    const Params& p = gpk.pp.par;
    ByteReader r(bytes);
    read_header_expect(r, "FDGS-DNP", p);
    uint32_t uid = r.u32();
    require(uid < p.N, Err::Malformed, "identity out of range");
    DenialStatement st = make_denial_statement(gpk, sig, index_to_path(uid, p.ell));
    NizkProof proof = read_proof(r, st);
    require(r.done(), Err::Malformed, "trailing bytes");
    return {uid, proof};
}

} // namespace fdgs
