#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "doctest.h"
#include "fdgs/io.hpp"
#include "fdgs/scheme.hpp"

using namespace fdgs;

namespace {

std::span<const uint8_t> msg(const std::string& s) {
    return {reinterpret_cast<const uint8_t*>(s.data()), s.size()};
}

// Shared serialization fixture: a signed, traced, denied group snapshot.
struct World {
    Params par = Params::profile("T1");
    PublicParams pp;
    GroupPublicKey gpk;
    GmKeys gm;
    TracingKeys tk;
    GroupState st;
    GroupInfo info;
    std::vector<UserKey> users;
    Signature sig;
    TraceResult tr;
    NizkProof denial;

    World() : pp(setup(par, 600)) {
        Rng grng(601);
        gm = gm_keygen(pp, grng);
        tk = tm_keygen(par, 602);
        gpk = GroupPublicKey{pp, gm.mpk, true, tk.pk};
        st = empty_group(pp);
        Rng urng(603);
        for (int i = 0; i < 3; ++i) {
            users.push_back(user_keygen(pp, urng));
            join_issue(pp, st, users.back().p);
        }
        info = group_update(pp, st, {});
        Rng rng(604);
        sig = *sign(gpk, info, 1, users[1].x, msg("io"), rng);
        tr = *trace(gpk, tk.sk, info, st.reg, msg("io"), sig, rng);
        denial = *d_trace(gpk, tk.sk, info, 2, msg("io"), sig, rng);
    }
};

World& world() {
    static World w;
    return w;
}

}  // namespace

TEST_CASE("public parameter files round-trip") {
    World& w = world();
    auto bytes = save_pp(w.pp);
    PublicParams back = load_pp(bytes);
    CHECK(back.par.profile_name == w.par.profile_name);
    CHECK(back.hk.A.a == w.pp.hk.A.a);
    CHECK(back.com.key == w.pp.com.key);
    CHECK(save_pp(back) == bytes);

    SUBCASE("wrong magic is malformed") {
        auto bad = bytes;
        bad[2] ^= 0xFF;
        CHECK_THROWS_AS((void)load_pp(bad), FdgsError);
    }
    SUBCASE("truncation is malformed") {
        std::vector<uint8_t> head(bytes.begin(), bytes.end() - 3);
        CHECK_THROWS_AS((void)load_pp(head), FdgsError);
    }
    SUBCASE("trailing garbage is malformed") {
        auto fat = bytes;
        fat.push_back(0);
        CHECK_THROWS_AS((void)load_pp(fat), FdgsError);
    }
}

TEST_CASE("group key files round-trip with and without the tracing key") {
    World& w = world();
    auto bytes = save_gpk(w.gpk);
    GroupPublicKey back = load_gpk(bytes);
    CHECK(back.tpk_present);
    CHECK(back.mpk == w.gpk.mpk);
    CHECK(back.tpk.B.a == w.gpk.tpk.B.a);
    CHECK(back.tpk.P2.a == w.gpk.tpk.P2.a);
    CHECK(save_gpk(back) == bytes);

    GroupPublicKey bare = w.gpk;
    bare.tpk_present = false;
    bare.tpk = TracingPublicKey{};
    auto bare_bytes = save_gpk(bare);
    CHECK(bare_bytes.size() < bytes.size());
    GroupPublicKey bare_back = load_gpk(bare_bytes);
    CHECK_FALSE(bare_back.tpk_present);
}

TEST_CASE("key material files round-trip") {
    World& w = world();
    CHECK(load_msk(save_msk(w.par, w.gm.msk), w.par) == w.gm.msk);

    TracingSecretKey tsk = load_tsk(save_tsk(w.par, w.tk.sk), w.par);
    CHECK(tsk.S1.a == w.tk.sk.S1.a);
    CHECK(tsk.E1.a == w.tk.sk.E1.a);

    UserKey uk = load_ukey(save_ukey(w.par, w.users[0]), w.par);
    CHECK(uk.x == w.users[0].x);
    CHECK(uk.p == w.users[0].p);

    SUBCASE("a profile mismatch is rejected") {
        Params other = Params::custom(4, 12289, 4, 3, 10, "T1-l4");
        CHECK_THROWS_AS((void)load_msk(save_msk(w.par, w.gm.msk), other), FdgsError);
    }
    SUBCASE("an out-of-bound secret is rejected") {
        TracingSecretKey hot = w.tk.sk;
        hot.S1.a[0] = int32_t(w.par.beta) + 2;
        CHECK_THROWS_AS((void)load_tsk(save_tsk(w.par, hot), w.par), FdgsError);
    }
}

TEST_CASE("registry and tree files round-trip") {
    World& w = world();
    RegTable reg = load_reg(save_reg(w.par, w.st.reg), w.par);
    CHECK(reg.counter == w.st.reg.counter);
    CHECK(reg.epoch == w.st.reg.epoch);
    for (uint32_t i = 0; i < w.par.N; ++i) {
        CHECK(reg.entries[i].upk == w.st.reg.entries[i].upk);
        CHECK(reg.entries[i].epoch == w.st.reg.entries[i].epoch);
    }

    MerkleTree tree = load_tree(save_tree(w.par, w.st.tree), w.pp);
    REQUIRE(tree.levels.size() == w.st.tree.levels.size());
    for (size_t lvl = 0; lvl < tree.levels.size(); ++lvl)
        CHECK(tree.levels[lvl] == w.st.tree.levels[lvl]);
}

TEST_CASE("epoch info files round-trip") {
    World& w = world();
    auto bytes = save_info(w.par, w.info);
    GroupInfo back = load_info(bytes, w.par);
    CHECK(back.epoch == w.info.epoch);
    CHECK(back.root == w.info.root);
    REQUIRE(back.witnesses.size() == w.info.witnesses.size());
    for (size_t i = 0; i < back.witnesses.size(); ++i) {
        REQUIRE(back.witnesses[i].has_value() == w.info.witnesses[i].has_value());
        if (back.witnesses[i]) {
            CHECK(back.witnesses[i]->path_bits == w.info.witnesses[i]->path_bits);
            CHECK(back.witnesses[i]->siblings == w.info.witnesses[i]->siblings);
        }
    }

    // epoch zero carries empty witness slots
    GroupState st0 = empty_group(w.pp);
    GroupInfo info0 = initial_info(w.pp, st0);
    GroupInfo back0 = load_info(save_info(w.par, info0), w.par);
    CHECK(back0.epoch == 0);
    for (const auto& wit : back0.witnesses) CHECK_FALSE(wit.has_value());
}

TEST_CASE("signature, trace and denial files round-trip") {
    World& w = world();
    auto sig_bytes = save_signature(w.par, w.sig);
    Signature sig = load_signature(sig_bytes, w.gpk, w.info);
    CHECK(save_signature(w.par, sig) == sig_bytes);
    CHECK(verify(w.gpk, w.info, msg("io"), sig));

    auto tr_bytes = save_trace_result(w.par, w.tr);
    TraceResult tr = load_trace_result(tr_bytes, w.gpk, w.sig);
    CHECK(tr.uid == w.tr.uid);
    CHECK(tr.plain == w.tr.plain);
    CHECK(judge(w.gpk, tr.uid, w.info, msg("io"), w.sig, tr.proof));

    auto dn_bytes = save_denial(w.par, 2, w.denial);
    auto [denied, plea] = load_denial(dn_bytes, w.gpk, w.sig);
    CHECK(denied == 2);
    CHECK(d_judge(w.gpk, w.info, denied, msg("io"), w.sig, plea));

    SUBCASE("signature truncation is malformed") {
        std::vector<uint8_t> head(sig_bytes.begin(), sig_bytes.end() - 5);
        CHECK_THROWS_AS((void)load_signature(head, w.gpk, w.info), FdgsError);
    }
    SUBCASE("trace file for an out-of-range identity is malformed") {
        TraceResult hot = w.tr;
        hot.uid = w.par.N + 9;
        CHECK_THROWS_AS((void)load_trace_result(save_trace_result(w.par, hot), w.gpk, w.sig),
                        FdgsError);
    }
}

// ---------------------------------------------------------------------------
// CLI battery: drives the installed binary through a full workflow in a
// scratch directory and checks exit codes and porcelain output.

namespace {

struct CliResult {
    int code = -1;
    std::string out;
};

const std::string& scratch() {
    static const std::string d = []() {
        std::string dir = "cli_scratch";
        std::string cmd = "rm -rf " + dir + " && mkdir -p " + dir;
        if (std::system(cmd.c_str()) != 0) throw std::runtime_error("scratch dir setup failed");
        return dir;
    }();
    return d;
}

CliResult run_cli(const std::string& args) {
    std::string out_path = scratch() + "/last_out.txt";
    std::string cmd = "cd " + scratch() + " && " + FDGS_CLI_PATH + " " + args + " > last_out.txt 2>&1";
    int raw = std::system(cmd.c_str());
    CliResult res;
    res.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    std::ifstream in(out_path);
    std::stringstream ss;
    ss << in.rdbuf();
    res.out = ss.str();
    return res;
}

std::map<std::string, std::string> porcelain(const std::string& out) {
    std::map<std::string, std::string> kv;
    std::istringstream lines(out);
    std::string line;
    while (std::getline(lines, line)) {
        auto eq = line.find('=');
        if (eq != std::string::npos) kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return kv;
}

std::vector<uint8_t> slurp(const std::string& name) {
    return read_file(scratch() + "/" + name);
}

}  // namespace

TEST_CASE("command line workflow") {
    // setup is deterministic per seed
    CHECK(run_cli("setup --profile T1 --seed 7 --out pp.bin --porcelain").code == 0);
    auto first = slurp("pp.bin");
    CHECK(run_cli("setup --profile T1 --seed 7 --out pp2.bin --porcelain").code == 0);
    CHECK(slurp("pp2.bin") == first);
    CHECK(run_cli("setup --profile T1 --seed 8 --out pp3.bin --porcelain").code == 0);
    CHECK(slurp("pp3.bin") != first);

    auto kv = porcelain(run_cli("setup --profile T1 --seed 7 --out pp.bin --porcelain").out);
    CHECK(kv.at("seed") == "7");
    CHECK(kv.at("profile") == "T1");

    // key material and two members
    CHECK(run_cli("keygen-gm --pp pp.bin --seed 11 --porcelain").code == 0);
    CHECK(run_cli("keygen-tm --gpk gpk.bin --seed 12 --porcelain").code == 0);
    CHECK(run_cli("ukeygen --pp pp.bin --seed 13 --out alice.bin --porcelain").code == 0);
    CHECK(run_cli("ukeygen --pp pp.bin --seed 14 --out bob.bin --porcelain").code == 0);

    auto join1 = porcelain(run_cli("join --ukey alice.bin --porcelain").out);
    CHECK(join1.at("uid") == "0");
    auto join2 = porcelain(run_cli("join --ukey bob.bin --porcelain").out);
    CHECK(join2.at("uid") == "1");

    auto up = porcelain(run_cli("update --porcelain").out);
    CHECK(up.at("epoch") == "1");
    CHECK(up.at("active") == "2");

    // a second tracing key refuses to overwrite the first
    CHECK(run_cli("keygen-tm --gpk gpk.bin --seed 99 --porcelain").code == 2);

    // sign and verify
    auto sg = porcelain(
        run_cli("sign --ukey bob.bin --uid 1 -m \"hello world\" --seed 21 --porcelain").out);
    CHECK(sg.at("result") == "signed");
    CHECK(run_cli("verify --sig sig.bin -m \"hello world\" --porcelain").code == 0);
    CHECK(run_cli("verify --sig sig.bin -m \"hello there\" --porcelain").code == 1);

    // single byte flip: semantic reject, exit 1
    {
        auto bytes = slurp("sig.bin");
        bytes[bytes.size() / 2] ^= 0x04;
        write_file(scratch() + "/sig_flip.bin", bytes);
        auto flipped = run_cli("verify --sig sig_flip.bin -m \"hello world\" --porcelain");
        CHECK(flipped.code == 1);
    }

    // trace, judge, denial
    auto trc = porcelain(run_cli("trace --sig sig.bin -m \"hello world\" --seed 22 --porcelain").out);
    CHECK(trc.at("result") == "traced");
    CHECK(trc.at("uid") == "1");
    auto jd = porcelain(run_cli("judge --sig sig.bin --trace trace.bin -m \"hello world\" --porcelain").out);
    CHECK(jd.at("result") == "accept");

    CHECK(run_cli("dtrace --sig sig.bin --uid 0 -m \"hello world\" --seed 23 --porcelain").code == 0);
    CHECK(run_cli("djudge --sig sig.bin --denial denial.bin -m \"hello world\" --porcelain").code == 0);
    // the true signer cannot be denied
    CHECK(run_cli("dtrace --sig sig.bin --uid 1 -m \"hello world\" --seed 24 --porcelain").code == 1);

    // epoch-0 member cannot sign yet
    CHECK(run_cli("ukeygen --pp pp.bin --seed 15 --out carol.bin --porcelain").code == 0);
    auto j3 = porcelain(run_cli("join --ukey carol.bin --porcelain").out);
    CHECK(j3.at("uid") == "2");
    auto no_wit = run_cli("sign --ukey carol.bin --uid 2 -m late --seed 25 --porcelain");
    CHECK(no_wit.code == 1);
    CHECK(porcelain(no_wit.out).at("result") == "no-witness");

    // revocation: epoch moves, the revoked member loses signing
    auto up2 = porcelain(run_cli("update --revoke 1 --porcelain").out);
    CHECK(up2.at("epoch") == "2");
    CHECK(run_cli("sign --ukey bob.bin --uid 1 -m again --seed 26 --porcelain").code == 1);
    CHECK(run_cli("verify --sig sig.bin -m \"hello world\" --porcelain").code == 1);

    // usage and IO errors are exit 2
    CHECK(run_cli("verify --sig missing.bin -m x --porcelain").code == 2);
    CHECK(run_cli("frobnicate --porcelain").code == 2);
    CHECK(run_cli("setup --no-such-flag").code == 2);

    // a corrupted header is a malformed artifact, exit 1
    {
        auto bytes = slurp("sig.bin");
        bytes[0] ^= 0xFF;
        write_file(scratch() + "/sig_badmagic.bin", bytes);
        auto bad = run_cli("verify --sig sig_badmagic.bin -m x --porcelain");
        CHECK(bad.code == 1);
        CHECK(porcelain(bad.out).at("result") == "malformed-artifact");
    }
}

TEST_CASE("profile environment default") {
    std::string cmd = "cd " + scratch() + " && FDGS_PROFILE=T2 " + FDGS_CLI_PATH +
                      " setup --seed 3 --out env_pp.bin --porcelain > env_out.txt 2>&1";
    REQUIRE(std::system(cmd.c_str()) == 0);
    std::ifstream in(scratch() + "/env_out.txt");
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(porcelain(ss.str()).at("profile") == "T2");
    PublicParams pp = load_pp(slurp("env_pp.bin"));
    CHECK(pp.par.profile_name == "T2");
}

TEST_CASE("scenario subcommand runs a script") {
    std::ofstream script(scratch() + "/scn.txt");
    script << "# two members, one signature\n"
              "join 1\n"
              "join 2\n"
              "update\n"
              "sign 0 scripted message\n"
              "verify 0\n"
              "trace 0\n"
              "deny 0 1\n";
    script.close();
    auto res = run_cli("run-scenario --script scn.txt --seed 5 --porcelain");
    CHECK(res.code == 0);
    auto kv = porcelain(res.out);
    CHECK(kv.at("scenario_ok") == "1");
    CHECK(res.out.find("sign uid=0 ref=0") != std::string::npos);
    CHECK(res.out.find("verify ref=0 -> accept") != std::string::npos);
}
