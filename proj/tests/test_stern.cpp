#include <algorithm>

#include "doctest.h"
#include "fdgs/stern.hpp"

using namespace fdgs;

namespace {

// Small exercise relation: binary vectors of length 6 and weight exactly 3,
// masked by one full coordinate permutation.  VALID is closed under S_6.
class ToyStatement : public SternStatement {
public:
    ToyStatement(uint64_t seed, uint32_t q = 12289) {
        Rng rng(seed);
        ZqMat M = sample_uniform_matrix(rng, 3, 6, q);
        z0 = ZqVec{1, 1, 1, 0, 0, 0};
        std::vector<uint32_t> shuffle = rng.permutation(6);
        ZqVec z(6);
        for (uint32_t i = 0; i < 6; ++i) z[i] = z0[shuffle[i]];
        z0 = z;
        ZqVec u = mat_vec(M, z0, q);
        set_system(std::move(M), std::move(u), q);
    }

    SternPerm sample_perm(Rng& rng) const override {
        SternPerm p;
        p.perms.push_back(rng.permutation(6));
        return p;
    }
    std::vector<uint32_t> coordinate_map(const SternPerm& perm) const override {
        return perm.perms.at(0);
    }
    bool is_valid(const ZqVec& t) const override {
        if (t.size() != 6 || !is_binary(t)) return false;
        uint32_t w = 0;
        for (uint32_t x : t) w += x;
        return w == 3;
    }
    ZqVec sample_valid(Rng& rng) const override {
        ZqVec base{1, 1, 1, 0, 0, 0};
        std::vector<uint32_t> s = rng.permutation(6);
        ZqVec out(6);
        for (uint32_t i = 0; i < 6; ++i) out[i] = base[s[i]];
        return out;
    }
    uint32_t perm_bit_count() const override { return 0; }
    std::vector<uint32_t> perm_lengths() const override { return {6}; }

    ZqVec z0;
};

ComKey toy_key() { return com_keygen(ComMode::Sponge, Params::profile("T1"), 11); }

std::vector<uint8_t> proof_bytes(const NizkProof& proof, uint32_t q) {
    ByteWriter w;
    write_proof(w, proof, q);
    return w.take();
}

}  // namespace

TEST_CASE("honest rounds verify for every challenge") {
    ToyStatement st(1);
    ComKey ck = toy_key();
    Rng rng(2);
    for (int i = 0; i < 20; ++i) {
        SternProverRound round = prove_round(st, ck, st.z0, rng);
        for (uint8_t ch = 1; ch <= 3; ++ch) {
            SternResponse rsp = respond(st, round, ch);
            CHECK(verify_round(st, ck, round.cmt, ch, rsp));
        }
    }
}

TEST_CASE("challenge one never reveals the mask") {
    ToyStatement st(3);
    Rng rng(4);
    SternProverRound round = prove_round(st, toy_key(), st.z0, rng);
    SternResponse rsp = respond(st, round, 1);
    CHECK(rsp.eta.perms.empty());
    CHECK(rsp.eta.bits.empty());
}

TEST_CASE("tampered responses reject") {
    ToyStatement st(5);
    ComKey ck = toy_key();
    Rng rng(6);
    SternProverRound round = prove_round(st, ck, st.z0, rng);

    SUBCASE("challenge 1: moved coordinate breaks validity or binding") {
        SternResponse rsp = respond(st, round, 1);
        rsp.v1[0] = (rsp.v1[0] + 1) % 2;
        CHECK_FALSE(verify_round(st, ck, round.cmt, 1, rsp));
    }
    SUBCASE("challenge 1: swapped randomness breaks both commitments") {
        SternResponse rsp = respond(st, round, 1);
        std::swap(rsp.rho_a, rsp.rho_b);
        CHECK_FALSE(verify_round(st, ck, round.cmt, 1, rsp));
    }
    SUBCASE("challenge 2: shifted masked witness misses C1") {
        SternResponse rsp = respond(st, round, 2);
        rsp.v1[2] = (rsp.v1[2] + 1) % st.modulus();
        CHECK_FALSE(verify_round(st, ck, round.cmt, 2, rsp));
    }
    SUBCASE("challenge 2: altered permutation misses C1") {
        SternResponse rsp = respond(st, round, 2);
        std::swap(rsp.eta.perms[0][0], rsp.eta.perms[0][1]);
        CHECK_FALSE(verify_round(st, ck, round.cmt, 2, rsp));
    }
    SUBCASE("challenge 3: shifted mask misses C1") {
        SternResponse rsp = respond(st, round, 3);
        rsp.v1[4] = (rsp.v1[4] + 1) % st.modulus();
        CHECK_FALSE(verify_round(st, ck, round.cmt, 3, rsp));
    }
    SUBCASE("response replayed under the wrong challenge") {
        SternResponse rsp = respond(st, round, 2);
        CHECK_FALSE(verify_round(st, ck, round.cmt, 3, rsp));
    }
    SUBCASE("commitment substitution") {
        SternResponse rsp = respond(st, round, 2);
        RoundCommitment cmt = round.cmt;
        cmt.c1[0] ^= 1;
        CHECK_FALSE(verify_round(st, ck, cmt, 2, rsp));
    }
}

TEST_CASE("non-interactive proofs round-trip") {
    ToyStatement st(7);
    ComKey ck = toy_key();
    std::vector<uint8_t> ctx{'t', 'o', 'y'};
    Rng rng(8);
    NizkProof proof = fs_prove(st, ck, st.z0, ctx, 10, rng);
    REQUIRE(proof.cmts.size() == 10);
    REQUIRE(proof.challenges.size() == 10);
    CHECK(fs_verify(st, ck, proof, ctx, 10));

    SUBCASE("context binds") {
        std::vector<uint8_t> other{'t', 'o', 'x'};
        CHECK_FALSE(fs_verify(st, ck, proof, other, 10));
    }
    SUBCASE("kappa binds") {
        CHECK_FALSE(fs_verify(st, ck, proof, ctx, 9));
    }
    SUBCASE("flipped challenge byte") {
        NizkProof bad = proof;
        bad.challenges[0] = uint8_t(bad.challenges[0] % 3 + 1);
        CHECK_FALSE(fs_verify(st, ck, bad, ctx, 10));
    }
    SUBCASE("tampered commitment") {
        NizkProof bad = proof;
        bad.cmts[3].c2[5] ^= 0x10;
        CHECK_FALSE(fs_verify(st, ck, bad, ctx, 10));
    }
    SUBCASE("dropped round") {
        NizkProof bad = proof;
        bad.cmts.pop_back();
        bad.challenges.pop_back();
        bad.responses.pop_back();
        CHECK_FALSE(fs_verify(st, ck, bad, ctx, 10));
    }
}

TEST_CASE("proving requires a real witness") {
    ToyStatement st(9);
    Rng rng(10);
    ZqVec wrong = st.sample_valid(rng);  // valid shape, wrong image almost surely
    if (mat_vec(st.M(), wrong, st.modulus()) == st.u()) return;
    std::vector<uint8_t> ctx;
    CHECK_THROWS_AS((void)fs_prove(st, toy_key(), wrong, ctx, 4, rng), FdgsError);
}

TEST_CASE("proof serialization round-trips byte for byte") {
    ToyStatement st(12);
    ComKey ck = toy_key();
    std::vector<uint8_t> ctx{'s'};
    Rng rng(13);
    NizkProof proof = fs_prove(st, ck, st.z0, ctx, 6, rng);
    std::vector<uint8_t> bytes = proof_bytes(proof, st.modulus());

    ByteReader r(bytes);
    NizkProof back = read_proof(r, st);
    CHECK(r.done());
    CHECK(proof_bytes(back, st.modulus()) == bytes);
    CHECK(fs_verify(st, ck, back, ctx, 6));

    SUBCASE("truncation is malformed") {
        for (size_t cut : {bytes.size() - 1, bytes.size() / 2, size_t(3)}) {
            std::vector<uint8_t> head(bytes.begin(), bytes.begin() + cut);
            ByteReader rr(head);
            CHECK_THROWS_AS((void)read_proof(rr, st), FdgsError);
        }
    }
    SUBCASE("challenge byte outside 1..3 is malformed") {
        std::vector<uint8_t> bad = bytes;
        bad[4 + 96 * 6 + 6] = 7;  // first response tag after count, commitments, challenges
        ByteReader rr(bad);
        CHECK_THROWS_AS((void)read_proof(rr, st), FdgsError);
    }
}

TEST_CASE("prover is deterministic per seed") {
    ToyStatement st(14);
    ComKey ck = toy_key();
    std::vector<uint8_t> ctx{'d'};
    Rng a(15), b(15), c(16);
    NizkProof pa = fs_prove(st, ck, st.z0, ctx, 5, a);
    NizkProof pb = fs_prove(st, ck, st.z0, ctx, 5, b);
    NizkProof pc = fs_prove(st, ck, st.z0, ctx, 5, c);
    CHECK(proof_bytes(pa, st.modulus()) == proof_bytes(pb, st.modulus()));
    CHECK(proof_bytes(pa, st.modulus()) != proof_bytes(pc, st.modulus()));
}

TEST_CASE("challenge derivation is deterministic and unbiased in range") {
    ToyStatement st(17);
    ComKey ck = toy_key();
    Rng rng(18);
    std::vector<RoundCommitment> cmts;
    for (int i = 0; i < 8; ++i) cmts.push_back(prove_round(st, ck, st.z0, rng).cmt);
    std::vector<uint8_t> ctx{'c', 'h'};
    std::vector<uint8_t> ch1 = fs_challenges(st, ctx, cmts, 40);
    std::vector<uint8_t> ch2 = fs_challenges(st, ctx, cmts, 40);
    REQUIRE(ch1.size() == 40);
    CHECK(ch1 == ch2);
    for (uint8_t c : ch1) CHECK((c >= 1 && c <= 3));

    std::vector<uint8_t> other_ctx{'c', 'x'};
    CHECK(fs_challenges(st, other_ctx, cmts, 40) != ch1);
    auto cmts2 = cmts;
    cmts2[0].c3[0] ^= 1;
    CHECK(fs_challenges(st, ctx, cmts2, 40) != ch1);
}

TEST_CASE("simulator aborts exactly on its predicted challenge") {
    ToyStatement st(19);
    ComKey ck = toy_key();
    Rng rng(20);
    int aborts = 0;
    std::array<int, 4> predicted_counts{};
    for (int i = 0; i < 300; ++i) {
        SternSimRound sim = simulate_commit(st, ck, rng);
        REQUIRE((sim.predicted >= 1 && sim.predicted <= 3));
        ++predicted_counts[sim.predicted];
        for (uint8_t ch = 1; ch <= 3; ++ch) {
            std::optional<SternResponse> rsp = simulate_respond(st, sim, ch);
            if (ch == sim.predicted) {
                CHECK_FALSE(rsp.has_value());
                ++aborts;
            } else {
                REQUIRE(rsp.has_value());
                CHECK(verify_round(st, ck, sim.cmt, ch, *rsp));
            }
        }
    }
    CHECK(aborts == 300);
    for (int c = 1; c <= 3; ++c) CHECK(predicted_counts[c] >= 60);
}

TEST_CASE("three accepting answers yield the witness") {
    ToyStatement st(21);
    ComKey ck = toy_key();
    Rng rng(22);
    SternProverRound round = prove_round(st, ck, st.z0, rng);
    SternResponse r1 = respond(st, round, 1);
    SternResponse r2 = respond(st, round, 2);
    SternResponse r3 = respond(st, round, 3);

    ZqVec w = extract(st, ck, round.cmt, r1, r2, r3);
    CHECK(st.is_valid(w));
    CHECK(mat_vec(st.M(), w, st.modulus()) == st.u());
    CHECK(w == st.z0);

    SUBCASE("inconsistent transcripts raise extraction failure") {
        SternResponse bad = r2;
        std::swap(bad.rho_a, bad.rho_b);
        CHECK_THROWS_AS((void)extract(st, ck, round.cmt, r1, bad, r3), FdgsError);
    }
    SUBCASE("mixed rounds raise extraction failure") {
        SternProverRound other = prove_round(st, ck, st.z0, rng);
        SternResponse foreign = respond(st, other, 2);
        CHECK_THROWS_AS((void)extract(st, ck, round.cmt, r1, foreign, r3), FdgsError);
    }
}

TEST_CASE("size accounting tracks measured proofs") {
    ToyStatement st(23);
    ComKey ck = toy_key();
    std::vector<uint8_t> ctx;
    Rng rng(24);
    NizkProof proof = fs_prove(st, ck, st.z0, ctx, 10, rng);
    double expected = expected_proof_bytes(st, 10);
    double actual = double(proof_bytes(proof, st.modulus()).size());
    CHECK(actual > expected * 0.75);
    CHECK(actual < expected * 1.25);
}
