#include "fdgs/stern.hpp"

#include <algorithm>
#include <cstring>

#include "fdgs/errors.hpp"
#include "fdgs/keccak.hpp"

namespace fdgs {

namespace {

constexpr const char* kFsTag = "fdgs/fs-challenge";
constexpr const char* kInstanceTag = "fdgs/instance";

ZqVec apply_map(const std::vector<uint32_t>& map, const ZqVec& v) {
    ZqVec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = v[map[i]];
    return out;
}

ZqVec apply_inverse_map(const std::vector<uint32_t>& map, const ZqVec& v) {
    ZqVec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[map[i]] = v[i];
    return out;
}

std::vector<uint8_t> vec_payload(const ZqVec& v, uint32_t q) {
    ByteWriter w;
    w.zq_vec(v, q);
    return std::move(w).take();
}

// C1 binds the permutation together with a residue vector
std::vector<uint8_t> c1_payload(const SternPerm& perm, const ZqVec& v, uint32_t q) {
    ByteWriter w;
    write_perm(w, perm);
    w.zq_vec(v, q);
    return std::move(w).take();
}

bool entries_below(const ZqVec& v, uint32_t q) {
    return std::all_of(v.begin(), v.end(), [q](uint32_t x) { return x < q; });
}

} // namespace

bool operator==(const SternPerm& a, const SternPerm& b) {
    return a.bits == b.bits && a.perms == b.perms;
}

void SternStatement::set_system(ZqMat M, ZqVec u, uint32_t q) {
    require(M.rows == u.size(), Err::DimensionMismatch, "statement rows vs target");
    require(M.cols > 0 && q >= 3, Err::Malformed, "degenerate statement");
    M_ = std::move(M);
    u_ = std::move(u);
    D_ = static_cast<uint32_t>(M_.cols);
    q_ = q;
    digest_.reset();
    solver_.reset();
}

const Digest& SternStatement::instance_digest() const {
    if (!digest_) {
        ByteWriter w;
        w.str(kInstanceTag);
        w.zq_mat(M_, q_);
        w.zq_vec(u_, q_);
        auto bytes = std::move(w).take();
        auto h = shake256(bytes, 32);
        Digest d{};
        std::copy(h.begin(), h.end(), d.begin());
        digest_ = d;
    }
    return *digest_;
}

const LinearSolver& SternStatement::solver() const {
    if (!solver_) solver_ = std::make_unique<LinearSolver>(M_, q_);
    return *solver_;
}

SternProverRound prove_round(const SternStatement& st, const ComKey& ck, const ZqVec& z,
                             Rng& rng) {
    require(z.size() == st.dim(), Err::DimensionMismatch, "witness length");
    SternProverRound round;
    round.eta = st.sample_perm(rng);
    round.sigma = st.coordinate_map(round.eta);
    require(round.sigma.size() == st.dim(), Err::DimensionMismatch, "permutation size");
    round.r = sample_uniform_vector(rng, st.dim(), st.modulus());
    round.z = z;
    for (auto& rho : round.rho) rho = rng.bytes(kComRandLen);

    const uint32_t q = st.modulus();
    ZqVec mr = mat_vec(st.M(), round.r, q);
    ZqVec perm_r = apply_map(round.sigma, round.r);
    ZqVec perm_zr = apply_map(round.sigma, vec_add(round.z, round.r, q));

    round.cmt.c1 = com_commit(ck, c1_payload(round.eta, mr, q), round.rho[0]);
    round.cmt.c2 = com_commit(ck, vec_payload(perm_r, q), round.rho[1]);
    round.cmt.c3 = com_commit(ck, vec_payload(perm_zr, q), round.rho[2]);
    return round;
}

SternResponse respond(const SternStatement& st, const SternProverRound& round, uint8_t ch) {
    require(ch >= 1 && ch <= 3, Err::OutOfRange, "challenge");
    const uint32_t q = st.modulus();
    SternResponse rsp;
    rsp.ch = ch;
    switch (ch) {
    case 1:
        rsp.v1 = apply_map(round.sigma, round.z);
        rsp.v2 = apply_map(round.sigma, round.r);
        rsp.rho_a = round.rho[1];
        rsp.rho_b = round.rho[2];
        break;
    case 2:
        rsp.eta = round.eta;
        rsp.v1 = vec_add(round.z, round.r, q);
        rsp.rho_a = round.rho[0];
        rsp.rho_b = round.rho[2];
        break;
    default:
        rsp.eta = round.eta;
        rsp.v1 = round.r;
        rsp.rho_a = round.rho[0];
        rsp.rho_b = round.rho[1];
        break;
    }
    return rsp;
}

bool verify_round(const SternStatement& st, const ComKey& ck, const RoundCommitment& cmt,
                  uint8_t ch, const SternResponse& rsp) {
    if (ch < 1 || ch > 3 || rsp.ch != ch) return false;
    const uint32_t q = st.modulus();
    const uint32_t D = st.dim();
    if (rsp.rho_a.size() != kComRandLen || rsp.rho_b.size() != kComRandLen) return false;
    if (rsp.v1.size() != D || !entries_below(rsp.v1, q)) return false;

    try {
        if (ch == 1) {
            if (rsp.v2.size() != D || !entries_below(rsp.v2, q)) return false;
            if (!st.is_valid(rsp.v1)) return false;
            if (com_commit(ck, vec_payload(rsp.v2, q), rsp.rho_a) != cmt.c2) return false;
            ZqVec sum = vec_add(rsp.v1, rsp.v2, q);
            return com_commit(ck, vec_payload(sum, q), rsp.rho_b) == cmt.c3;
        }

        auto sigma = st.coordinate_map(rsp.eta);
        if (sigma.size() != D) return false;
        ZqVec permuted = apply_map(sigma, rsp.v1);

        if (ch == 2) {
            ZqVec lhs = vec_sub(mat_vec(st.M(), rsp.v1, q), st.u(), q);
            if (com_commit(ck, c1_payload(rsp.eta, lhs, q), rsp.rho_a) != cmt.c1) return false;
            return com_commit(ck, vec_payload(permuted, q), rsp.rho_b) == cmt.c3;
        }

        ZqVec lhs = mat_vec(st.M(), rsp.v1, q);
        if (com_commit(ck, c1_payload(rsp.eta, lhs, q), rsp.rho_a) != cmt.c1) return false;
        return com_commit(ck, vec_payload(permuted, q), rsp.rho_b) == cmt.c2;
    } catch (const FdgsError&) {
        return false;
    }
}

std::vector<uint8_t> fs_challenges(const SternStatement& st, std::span<const uint8_t> context,
                                   const std::vector<RoundCommitment>& cmts, uint32_t kappa) {
    Shake shake(Shake::Variant::Shake256);
    shake.absorb(kFsTag, std::strlen(kFsTag));
    ByteWriter w;
    w.u64(context.size());
    w.raw(context);
    shake.absorb(w.bytes());
    for (const auto& cmt : cmts) {
        shake.absorb(cmt.c1.data(), cmt.c1.size());
        shake.absorb(cmt.c2.data(), cmt.c2.size());
        shake.absorb(cmt.c3.data(), cmt.c3.size());
    }
    const auto& inst = st.instance_digest();
    shake.absorb(inst.data(), inst.size());

    // 243 = 3^5; each accepted byte yields five unbiased base-3 digits
    std::vector<uint8_t> out;
    out.reserve(kappa);
    while (out.size() < kappa) {
        uint8_t block[16];
        shake.squeeze(block, sizeof block);
        for (uint8_t b : block) {
            if (b >= 243) continue;
            for (int j = 0; j < 5; ++j) {
                if (out.size() < kappa) out.push_back(static_cast<uint8_t>(b % 3 + 1));
                b /= 3;
            }
        }
    }
    out.resize(kappa);
    return out;
}

NizkProof fs_prove(const SternStatement& st, const ComKey& ck, const ZqVec& z,
                   std::span<const uint8_t> context, uint32_t kappa, Rng& rng) {
    require(kappa > 0, Err::OutOfRange, "kappa");
    ZqVec check = mat_vec(st.M(), z, st.modulus());
    require(check == st.u(), Err::InvalidWitness, "witness does not satisfy the system");
    require(st.is_valid(z), Err::InvalidWitness, "witness outside VALID");

    NizkProof proof;
    std::vector<SternProverRound> rounds;
    rounds.reserve(kappa);
    for (uint32_t i = 0; i < kappa; ++i) {
        rounds.push_back(prove_round(st, ck, z, rng));
        proof.cmts.push_back(rounds.back().cmt);
    }
    proof.challenges = fs_challenges(st, context, proof.cmts, kappa);
    for (uint32_t i = 0; i < kappa; ++i)
        proof.responses.push_back(respond(st, rounds[i], proof.challenges[i]));
    return proof;
}

bool fs_verify(const SternStatement& st, const ComKey& ck, const NizkProof& proof,
               std::span<const uint8_t> context, uint32_t kappa) {
    if (proof.cmts.size() != kappa || proof.challenges.size() != kappa ||
        proof.responses.size() != kappa)
        return false;
    auto expect = fs_challenges(st, context, proof.cmts, kappa);
    if (proof.challenges != expect) return false;
    for (uint32_t i = 0; i < kappa; ++i) {
        if (!verify_round(st, ck, proof.cmts[i], proof.challenges[i], proof.responses[i]))
            return false;
    }
    return true;
}

SternSimRound simulate_commit(const SternStatement& st, const ComKey& ck, Rng& rng) {
    const uint32_t q = st.modulus();
    SternSimRound sim;
    sim.predicted = static_cast<uint8_t>(1 + rng.uniform(3));
    sim.eta = st.sample_perm(rng);
    sim.sigma = st.coordinate_map(sim.eta);
    sim.r = sample_uniform_vector(rng, st.dim(), q);
    for (auto& rho : sim.rho) rho = rng.bytes(kComRandLen);

    if (sim.predicted == 1) {
        // solvable but typically invalid vector; dies only on challenge 1
        auto sol = st.solver().solve(st.u());
        require(sol.has_value(), Err::InstanceUnsatisfiable, "no solution to the linear system");
        sim.z_alt = std::move(*sol);
    } else {
        // valid but typically unsolving vector
        sim.z_alt = st.sample_valid(rng);
    }

    ZqVec perm_r = apply_map(sim.sigma, sim.r);
    ZqVec zr = vec_add(sim.z_alt, sim.r, q);
    ZqVec perm_zr = apply_map(sim.sigma, zr);

    if (sim.predicted == 3) {
        // shift the first commitment so challenge 2 still checks out
        ZqVec lhs = vec_sub(mat_vec(st.M(), zr, q), st.u(), q);
        sim.cmt.c1 = com_commit(ck, c1_payload(sim.eta, lhs, q), sim.rho[0]);
    } else {
        sim.cmt.c1 = com_commit(ck, c1_payload(sim.eta, mat_vec(st.M(), sim.r, q), q), sim.rho[0]);
    }
    sim.cmt.c2 = com_commit(ck, vec_payload(perm_r, q), sim.rho[1]);
    sim.cmt.c3 = com_commit(ck, vec_payload(perm_zr, q), sim.rho[2]);
    return sim;
}

std::optional<SternResponse> simulate_respond(const SternStatement& st, const SternSimRound& sim,
                                              uint8_t ch) {
    require(ch >= 1 && ch <= 3, Err::OutOfRange, "challenge");
    if (ch == sim.predicted) return std::nullopt;
    SternProverRound round;
    round.eta = sim.eta;
    round.sigma = sim.sigma;
    round.r = sim.r;
    round.z = sim.z_alt;
    round.rho = sim.rho;
    round.cmt = sim.cmt;
    return respond(st, round, ch);
}

ZqVec extract(const SternStatement& st, const ComKey& ck, const RoundCommitment& cmt,
              const SternResponse& r1, const SternResponse& r2, const SternResponse& r3) {
    require(r1.ch == 1 && r2.ch == 2 && r3.ch == 3, Err::ExtractionFailed,
            "responses must cover challenges 1,2,3");
    require(verify_round(st, ck, cmt, 1, r1) && verify_round(st, ck, cmt, 2, r2) &&
                verify_round(st, ck, cmt, 3, r3),
            Err::ExtractionFailed, "responses do not all accept");

    // equal digests with differing openings would be a commitment collision
    require(r2.eta == r3.eta, Err::ExtractionFailed, "permutation mismatch across responses");
    require(r2.rho_a == r3.rho_a, Err::ExtractionFailed, "C1 opening mismatch");
    require(r1.rho_b == r2.rho_b, Err::ExtractionFailed, "C3 opening mismatch");
    require(r1.rho_a == r3.rho_b, Err::ExtractionFailed, "C2 opening mismatch");

    const uint32_t q = st.modulus();
    auto sigma = st.coordinate_map(r2.eta);
    require(r1.v2 == apply_map(sigma, r3.v1), Err::ExtractionFailed, "C2 payload mismatch");
    require(vec_add(r1.v1, r1.v2, q) == apply_map(sigma, r2.v1), Err::ExtractionFailed,
            "C3 payload mismatch");
    ZqVec lhs2 = vec_sub(mat_vec(st.M(), r2.v1, q), st.u(), q);
    require(lhs2 == mat_vec(st.M(), r3.v1, q), Err::ExtractionFailed, "C1 payload mismatch");

    ZqVec witness = apply_inverse_map(sigma, r1.v1);
    require(st.is_valid(witness), Err::ExtractionFailed, "extracted vector outside VALID");
    require(mat_vec(st.M(), witness, q) == st.u(), Err::ExtractionFailed,
            "extracted vector misses the target");
    return witness;
}

void write_perm(ByteWriter& w, const SternPerm& perm) {
    w.bit_vec(perm.bits);
    w.u32(static_cast<uint32_t>(perm.perms.size()));
    for (const auto& p : perm.perms) {
        w.u32(static_cast<uint32_t>(p.size()));
        uint32_t width = residue_width(static_cast<uint32_t>(p.size()));
        for (uint32_t v : p) w.fixed(v, width);
    }
}

SternPerm read_perm(ByteReader& r, const SternStatement& st) {
    SternPerm perm;
    perm.bits = r.bit_vec();
    require(perm.bits.size() == st.perm_bit_count(), Err::Malformed, "permutation bit count");
    auto lengths = st.perm_lengths();
    uint32_t count = r.u32();
    require(count == lengths.size(), Err::Malformed, "permutation count");
    perm.perms.resize(count);
    for (uint32_t i = 0; i < count; ++i) {
        uint32_t len = r.u32();
        require(len == lengths[i], Err::Malformed, "permutation length");
        uint32_t width = residue_width(len);
        auto& p = perm.perms[i];
        p.resize(len);
        std::vector<uint8_t> seen(len, 0);
        for (uint32_t j = 0; j < len; ++j) {
            uint64_t v = r.fixed(width);
            require(v < len && !seen[v], Err::Malformed, "not a permutation");
            seen[v] = 1;
            p[j] = static_cast<uint32_t>(v);
        }
    }
    return perm;
}

void write_proof(ByteWriter& w, const NizkProof& proof, uint32_t q) {
    w.u32(static_cast<uint32_t>(proof.cmts.size()));
    for (const auto& cmt : proof.cmts) {
        w.raw(std::span<const uint8_t>(cmt.c1.data(), cmt.c1.size()));
        w.raw(std::span<const uint8_t>(cmt.c2.data(), cmt.c2.size()));
        w.raw(std::span<const uint8_t>(cmt.c3.data(), cmt.c3.size()));
    }
    w.raw(proof.challenges);
    for (const auto& rsp : proof.responses) {
        w.u8(rsp.ch);
        if (rsp.ch == 1) {
            w.zq_vec(rsp.v1, q);
            w.zq_vec(rsp.v2, q);
        } else {
            write_perm(w, rsp.eta);
            w.zq_vec(rsp.v1, q);
        }
        w.raw(rsp.rho_a);
        w.raw(rsp.rho_b);
    }
}

NizkProof read_proof(ByteReader& r, const SternStatement& st) {
    const uint32_t q = st.modulus();
    NizkProof proof;
    uint32_t count = r.u32();
    require(count >= 1 && count <= 4096, Err::Malformed, "round count");
    proof.cmts.resize(count);
    auto read_digest = [&r](Digest& d) {
        auto bytes = r.raw(d.size());
        std::copy(bytes.begin(), bytes.end(), d.begin());
    };
    for (auto& cmt : proof.cmts) {
        read_digest(cmt.c1);
        read_digest(cmt.c2);
        read_digest(cmt.c3);
    }
    proof.challenges = r.raw(count);
    proof.responses.resize(count);
    for (uint32_t i = 0; i < count; ++i) {
        auto& rsp = proof.responses[i];
        rsp.ch = r.u8();
        require(rsp.ch >= 1 && rsp.ch <= 3, Err::Malformed, "challenge byte");
        if (rsp.ch == 1) {
            rsp.v1 = r.zq_vec(q);
            rsp.v2 = r.zq_vec(q);
        } else {
            rsp.eta = read_perm(r, st);
            rsp.v1 = r.zq_vec(q);
        }
        rsp.rho_a = r.raw(kComRandLen);
        rsp.rho_b = r.raw(kComRandLen);
    }
    return proof;
}

size_t perm_encoded_bytes(const SternStatement& st) {
    size_t total = 4 + (st.perm_bit_count() + 7) / 8; // bit vector
    total += 4;                                       // list count
    for (uint32_t len : st.perm_lengths()) total += 4 + size_t{len} * residue_width(len);
    return total;
}

size_t response_encoded_bytes(const SternStatement& st, uint8_t ch) {
    size_t vec_bytes = 4 + size_t{st.dim()} * residue_width(st.modulus());
    size_t total = 1 + 2 * kComRandLen; // challenge byte and the two openings
    if (ch == 1)
        total += 2 * vec_bytes;
    else
        total += perm_encoded_bytes(st) + vec_bytes;
    return total;
}

double expected_proof_bytes(const SternStatement& st, uint32_t kappa) {
    double avg_response = (response_encoded_bytes(st, 1) + response_encoded_bytes(st, 2) +
                           response_encoded_bytes(st, 3)) /
                          3.0;
    double per_round = 3.0 * 32 + 1 + avg_response; // commitments, challenge byte, response
    return 4 + kappa * per_round;
}

} // namespace fdgs
