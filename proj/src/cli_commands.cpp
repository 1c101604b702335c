#include "fdgs/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "fdgs/errors.hpp"
#include "fdgs/harness.hpp"
#include "fdgs/io.hpp"

namespace fdgs {

namespace {

struct Out {
    bool porcelain = false;

    void kv(const std::string& k, const std::string& v) const {
        if (porcelain)
            std::cout << k << "=" << v << "\n";
        else
            std::cout << k << ": " << v << "\n";
    }
    void kv(const std::string& k, uint64_t v) const { kv(k, std::to_string(v)); }
    void say(const std::string& s) const {
        if (!porcelain) std::cout << s << "\n";
    }
};

Params resolve_profile(const std::string& opt) {
    std::string name = opt;
    if (name.empty()) {
        const char* env = std::getenv("FDGS_PROFILE");
        name = env ? env : "T1";
    }
    return Params::profile(name);
}

uint64_t resolve_seed(bool given, uint64_t value) {
    if (given) return value;
    std::random_device rd;
    return (uint64_t(rd()) << 32) ^ rd();
}

std::span<const uint8_t> msg_bytes(const std::string& s) {
    return {reinterpret_cast<const uint8_t*>(s.data()), s.size()};
}

GroupPublicKey load_gpk_file(const std::string& path) { return load_gpk(read_file(path)); }

// rebuilds the tracing context a verifier-side command needs
struct Loaded {
    GroupPublicKey gpk;
    GroupInfo info;
};

Loaded load_common(const std::string& gpk_path, const std::string& info_path) {
    Loaded l;
    l.gpk = load_gpk_file(gpk_path);
    l.info = load_info(read_file(info_path), l.gpk.pp.par);
    return l;
}

// A flipped byte inside a signature or proof file makes the artifact reject,
// it is not an IO failure.  Missing files stay IO failures.
template <typename F>
bool load_or_reject(const Out& out, F&& f) {
    try {
        f();
        return true;
    } catch (const FdgsError& e) {
        if (e.code() == Err::IoFailure) throw;
        out.kv("result", "malformed-artifact");
        return false;
    }
}

std::string read_script(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    auto bytes = read_file(path);
    return std::string(bytes.begin(), bytes.end());
}

} // namespace

int cli_main(std::vector<std::string> args) {
    CLI::App app{"fully dynamic group signatures with deniability (toy parameters, no security)"};
    app.require_subcommand(1);

    Out out;
    app.add_flag("--porcelain", out.porcelain, "stable key=value output");

    int rc = 0;

    // ---- setup ----------------------------------------------------------
    {
        auto* c = app.add_subcommand("setup", "generate public parameters");
        struct SetupOpts {
            std::string profile, out_path = "pp.bin";
            uint64_t seed = 0;
            bool seed_given = false;
        };
        auto opts = std::make_shared<SetupOpts>();
        c->add_option("--profile", opts->profile, "parameter profile (default $FDGS_PROFILE or T1)");
        c->add_option("--seed", opts->seed, "master seed")->each([opts](const std::string&) {
            opts->seed_given = true;
        });
        c->add_option("--out", opts->out_path, "output file")->capture_default_str();
        c->callback([&, opts] {
            Params p = resolve_profile(opts->profile);
            uint64_t seed = resolve_seed(opts->seed_given, opts->seed);
            out.kv("seed", seed);
            PublicParams pp = setup(p, seed);
            write_file(opts->out_path, save_pp(pp));
            out.kv("profile", p.profile_name);
            out.kv("out", opts->out_path);
            out.say("public parameters written");
        });
    }

    // ---- keygen-gm ------------------------------------------------------
    {
        auto* c = app.add_subcommand("keygen-gm", "create the group manager key and empty group");
        struct GmOpts {
            std::string pp = "pp.bin", gpk = "gpk.bin", msk = "msk.bin", tree = "tree.bin",
                        reg = "reg.bin", info = "info.bin";
            uint64_t seed = 0;
            bool seed_given = false;
        };
        auto opts = std::make_shared<GmOpts>();
        c->add_option("--pp", opts->pp, "public parameters")->capture_default_str();
        c->add_option("--seed", opts->seed, "master seed")->each([opts](const std::string&) {
            opts->seed_given = true;
        });
        c->add_option("--gpk", opts->gpk, "group key output (tracing part pending)")->capture_default_str();
        c->add_option("--msk", opts->msk, "manager secret output")->capture_default_str();
        c->add_option("--tree", opts->tree, "accumulator state output")->capture_default_str();
        c->add_option("--reg", opts->reg, "registry output")->capture_default_str();
        c->add_option("--info", opts->info, "epoch 0 group info output")->capture_default_str();
        c->callback([&, opts] {
            PublicParams pp = load_pp(read_file(opts->pp));
            uint64_t seed = resolve_seed(opts->seed_given, opts->seed);
            out.kv("seed", seed);
            Rng rng(seed);
            GmKeys gm = gm_keygen(pp, rng);
            GroupPublicKey gpk;
            gpk.pp = pp;
            gpk.mpk = gm.mpk;
            gpk.tpk_present = false;
            GroupState st = empty_group(pp);
            write_file(opts->gpk, save_gpk(gpk));
            write_file(opts->msk, save_msk(pp.par, gm.msk));
            write_file(opts->tree, save_tree(pp.par, st.tree));
            write_file(opts->reg, save_reg(pp.par, st.reg));
            write_file(opts->info, save_info(pp.par, initial_info(pp, st)));
            out.kv("epoch", uint64_t(0));
            out.say("group created; run keygen-tm to finish the group key");
        });
    }

    // ---- keygen-tm ------------------------------------------------------
    {
        auto* c = app.add_subcommand("keygen-tm", "add the tracing key to the group key");
        struct TmOpts {
            std::string gpk = "gpk.bin", tsk = "tsk.bin";
            uint64_t seed = 0;
            bool seed_given = false;
        };
        auto opts = std::make_shared<TmOpts>();
        c->add_option("--gpk", opts->gpk, "group key (updated in place)")->capture_default_str();
        c->add_option("--seed", opts->seed, "master seed")->each([opts](const std::string&) {
            opts->seed_given = true;
        });
        c->add_option("--tsk", opts->tsk, "tracing secret output")->capture_default_str();
        c->callback([&, opts] {
            GroupPublicKey gpk = load_gpk_file(opts->gpk);
            require(!gpk.tpk_present, Err::InvalidKey, "group key already carries a tracing key");
            uint64_t seed = resolve_seed(opts->seed_given, opts->seed);
            out.kv("seed", seed);
            TracingKeys keys = tm_keygen(gpk.pp.par, seed);
            gpk.tpk = keys.pk;
            gpk.tpk_present = true;
            write_file(opts->gpk, save_gpk(gpk));
            write_file(opts->tsk, save_tsk(gpk.pp.par, keys.sk));
            out.say("tracing key installed");
        });
    }

    // ---- ukeygen --------------------------------------------------------
    {
        auto* c = app.add_subcommand("ukeygen", "generate a member key pair");
        struct UkOpts {
            std::string pp = "pp.bin", out_path = "ukey.bin";
            uint64_t seed = 0;
            bool seed_given = false;
        };
        auto opts = std::make_shared<UkOpts>();
        c->add_option("--pp", opts->pp, "public parameters")->capture_default_str();
        c->add_option("--seed", opts->seed, "master seed")->each([opts](const std::string&) {
            opts->seed_given = true;
        });
        c->add_option("--out", opts->out_path, "key output")->capture_default_str();
        c->callback([&, opts] {
            PublicParams pp = load_pp(read_file(opts->pp));
            uint64_t seed = resolve_seed(opts->seed_given, opts->seed);
            out.kv("seed", seed);
            Rng rng(seed);
            UserKey key = user_keygen(pp, rng);
            write_file(opts->out_path, save_ukey(pp.par, key));
            out.kv("out", opts->out_path);
            out.say("member key written");
        });
    }

    // ---- join -----------------------------------------------------------
    {
        auto* c = app.add_subcommand("join", "issue a member into the group");
        struct JoinOpts {
            std::string gpk = "gpk.bin", tree = "tree.bin", reg = "reg.bin", ukey = "ukey.bin";
            uint64_t seed = 0;
            bool seed_given = false;
        };
        auto opts = std::make_shared<JoinOpts>();
        c->add_option("--gpk", opts->gpk, "group key")->capture_default_str();
        c->add_option("--tree", opts->tree, "accumulator state (updated)")->capture_default_str();
        c->add_option("--reg", opts->reg, "registry (updated)")->capture_default_str();
        c->add_option("--ukey", opts->ukey, "member key")->capture_default_str();
        c->add_option("--seed", opts->seed, "master seed")->each([opts](const std::string&) {
            opts->seed_given = true;
        });
        c->callback([&, opts] {
            out.kv("seed", resolve_seed(opts->seed_given, opts->seed));
            GroupPublicKey gpk = load_gpk_file(opts->gpk);
            const Params& p = gpk.pp.par;
            GroupState st;
            st.tree = load_tree(read_file(opts->tree), gpk.pp);
            st.reg = load_reg(read_file(opts->reg), p);
            UserKey key = load_ukey(read_file(opts->ukey), p);
            uint32_t uid = join_issue(gpk.pp, st, key.p);
            write_file(opts->tree, save_tree(p, st.tree));
            write_file(opts->reg, save_reg(p, st.reg));
            out.kv("uid", uid);
            out.kv("epoch", st.reg.epoch);
            out.say("member joins at the next update");
        });
    }

    // ---- update ---------------------------------------------------------
    {
        auto* c = app.add_subcommand("update", "advance the epoch, applying revocations");
        struct UpdateOpts {
            std::string gpk = "gpk.bin", tree = "tree.bin", reg = "reg.bin", info = "info.bin";
            std::vector<uint32_t> revoke;
            uint64_t seed = 0;
            bool seed_given = false;
        };
        auto opts = std::make_shared<UpdateOpts>();
        c->add_option("--gpk", opts->gpk, "group key")->capture_default_str();
        c->add_option("--tree", opts->tree, "accumulator state (updated)")->capture_default_str();
        c->add_option("--reg", opts->reg, "registry (updated)")->capture_default_str();
        c->add_option("--info", opts->info, "group info output")->capture_default_str();
        c->add_option("--revoke", opts->revoke, "member to revoke (repeatable)");
        c->add_option("--seed", opts->seed, "master seed")->each([opts](const std::string&) {
            opts->seed_given = true;
        });
        c->callback([&, opts] {
            out.kv("seed", resolve_seed(opts->seed_given, opts->seed));
            GroupPublicKey gpk = load_gpk_file(opts->gpk);
            const Params& p = gpk.pp.par;
            GroupState st;
            st.tree = load_tree(read_file(opts->tree), gpk.pp);
            st.reg = load_reg(read_file(opts->reg), p);
            GroupInfo info = group_update(gpk.pp, st, opts->revoke);
            write_file(opts->tree, save_tree(p, st.tree));
            write_file(opts->reg, save_reg(p, st.reg));
            write_file(opts->info, save_info(p, info));
            uint32_t active = 0;
            for (uint32_t uid = 0; uid < st.reg.counter; ++uid)
                if (is_active(info, st.reg, uid)) ++active;
            out.kv("epoch", info.epoch);
            out.kv("active", active);
        });
    }

    // ---- sign -----------------------------------------------------------
    {
        auto* c = app.add_subcommand("sign", "produce a group signature");
        struct SignOpts {
            std::string gpk = "gpk.bin", info = "info.bin", ukey = "ukey.bin",
                        out_path = "sig.bin", message;
            uint32_t uid = 0;
            uint64_t seed = 0;
            bool seed_given = false;
        };
        auto opts = std::make_shared<SignOpts>();
        c->add_option("--gpk", opts->gpk, "group key")->capture_default_str();
        c->add_option("--info", opts->info, "group info for the signing epoch")->capture_default_str();
        c->add_option("--ukey", opts->ukey, "member key")->capture_default_str();
        c->add_option("--uid", opts->uid, "member identity")->required();
        c->add_option("-m,--message", opts->message, "message to sign")->required();
        c->add_option("--seed", opts->seed, "master seed")->each([opts](const std::string&) {
            opts->seed_given = true;
        });
        c->add_option("--out", opts->out_path, "signature output")->capture_default_str();
        c->callback([&, opts] {
            uint64_t seed = resolve_seed(opts->seed_given, opts->seed);
            out.kv("seed", seed);
            Loaded l = load_common(opts->gpk, opts->info);
            UserKey key = load_ukey(read_file(opts->ukey), l.gpk.pp.par);
            Rng rng(seed);
            auto sig = sign(l.gpk, l.info, opts->uid, key.x, msg_bytes(opts->message), rng);
            if (!sig) {
                out.kv("result", "no-witness");
                rc = 1;
                return;
            }
            write_file(opts->out_path, save_signature(l.gpk.pp.par, *sig));
            out.kv("result", "signed");
            out.kv("out", opts->out_path);
            out.kv("epoch", l.info.epoch);
        });
    }

    // ---- verify ---------------------------------------------------------
    {
        auto* c = app.add_subcommand("verify", "verify a group signature");
        struct VerifyOpts {
            std::string gpk = "gpk.bin", info = "info.bin", sig = "sig.bin", message;
            uint64_t seed = 0;
            bool seed_given = false;
        };
        auto opts = std::make_shared<VerifyOpts>();
        c->add_option("--gpk", opts->gpk, "group key")->capture_default_str();
        c->add_option("--info", opts->info, "group info of the signature's epoch")->capture_default_str();
        c->add_option("--sig", opts->sig, "signature file")->capture_default_str();
        c->add_option("-m,--message", opts->message, "signed message")->required();
        c->add_option("--seed", opts->seed, "master seed")->each([opts](const std::string&) {
            opts->seed_given = true;
        });
        c->callback([&, opts] {
            out.kv("seed", resolve_seed(opts->seed_given, opts->seed));
            Loaded l = load_common(opts->gpk, opts->info);
            Signature sig;
            if (!load_or_reject(out, [&] {
                    sig = load_signature(read_file(opts->sig), l.gpk, l.info);
                })) {
                rc = 1;
                return;
            }
            bool ok = verify(l.gpk, l.info, msg_bytes(opts->message), sig);
            out.kv("result", ok ? "accept" : "reject");
            rc = ok ? 0 : 1;
        });
    }

    // ---- trace ----------------------------------------------------------
    {
        auto* c = app.add_subcommand("trace", "open a signature with the tracing key");
        struct TraceOpts {
            std::string gpk = "gpk.bin", tsk = "tsk.bin", info = "info.bin", reg = "reg.bin",
                        sig = "sig.bin", out_path = "trace.bin", message;
            uint64_t seed = 0;
            bool seed_given = false;
        };
        auto opts = std::make_shared<TraceOpts>();
        c->add_option("--gpk", opts->gpk, "group key")->capture_default_str();
        c->add_option("--tsk", opts->tsk, "tracing secret")->capture_default_str();
        c->add_option("--info", opts->info, "group info of the signature's epoch")->capture_default_str();
        c->add_option("--reg", opts->reg, "registry")->capture_default_str();
        c->add_option("--sig", opts->sig, "signature file")->capture_default_str();
        c->add_option("-m,--message", opts->message, "signed message")->required();
        c->add_option("--seed", opts->seed, "master seed")->each([opts](const std::string&) {
            opts->seed_given = true;
        });
        c->add_option("--out", opts->out_path, "trace result output")->capture_default_str();
        c->callback([&, opts] {
            uint64_t seed = resolve_seed(opts->seed_given, opts->seed);
            out.kv("seed", seed);
            Loaded l = load_common(opts->gpk, opts->info);
            const Params& p = l.gpk.pp.par;
            TracingSecretKey tsk = load_tsk(read_file(opts->tsk), p);
            RegTable reg = load_reg(read_file(opts->reg), p);
            Signature sig;
            if (!load_or_reject(out, [&] {
                    sig = load_signature(read_file(opts->sig), l.gpk, l.info);
                })) {
                rc = 1;
                return;
            }
            // only valid signatures are opened
            if (!verify(l.gpk, l.info, msg_bytes(opts->message), sig)) {
                out.kv("result", "invalid-signature");
                rc = 1;
                return;
            }
            Rng rng(seed);
            auto res = trace(l.gpk, tsk, l.info, reg, msg_bytes(opts->message), sig, rng);
            if (!res) {
                out.kv("result", "untraceable");
                rc = 1;
                return;
            }
            write_file(opts->out_path, save_trace_result(p, *res));
            out.kv("result", "traced");
            out.kv("uid", res->uid);
            out.kv("out", opts->out_path);
        });
    }

    // ---- judge ----------------------------------------------------------
    {
        auto* c = app.add_subcommand("judge", "check a trace result against its signature");
        struct JudgeOpts {
            std::string gpk = "gpk.bin", info = "info.bin", sig = "sig.bin",
                        trace_path = "trace.bin", message;
            uint64_t seed = 0;
            bool seed_given = false;
        };
        auto opts = std::make_shared<JudgeOpts>();
        c->add_option("--gpk", opts->gpk, "group key")->capture_default_str();
        c->add_option("--info", opts->info, "group info of the signature's epoch")->capture_default_str();
        c->add_option("--sig", opts->sig, "signature file")->capture_default_str();
        c->add_option("--trace", opts->trace_path, "trace result file")->capture_default_str();
        c->add_option("-m,--message", opts->message, "signed message")->required();
        c->add_option("--seed", opts->seed, "master seed")->each([opts](const std::string&) {
            opts->seed_given = true;
        });
        c->callback([&, opts] {
            out.kv("seed", resolve_seed(opts->seed_given, opts->seed));
            Loaded l = load_common(opts->gpk, opts->info);
            Signature sig;
            TraceResult res;
            if (!load_or_reject(out, [&] {
                    sig = load_signature(read_file(opts->sig), l.gpk, l.info);
                    res = load_trace_result(read_file(opts->trace_path), l.gpk, sig);
                })) {
                rc = 1;
                return;
            }
            bool ok = judge(l.gpk, res.uid, l.info, msg_bytes(opts->message), sig, res.proof);
            out.kv("uid", res.uid);
            out.kv("result", ok ? "accept" : "reject");
            rc = ok ? 0 : 1;
        });
    }

    // ---- dtrace ---------------------------------------------------------
    {
        auto* c = app.add_subcommand("dtrace", "prove a signature does not open to a member");
        struct DtraceOpts {
            std::string gpk = "gpk.bin", tsk = "tsk.bin", info = "info.bin", sig = "sig.bin",
                        out_path = "denial.bin", message;
            uint32_t uid = 0;
            uint64_t seed = 0;
            bool seed_given = false;
        };
        auto opts = std::make_shared<DtraceOpts>();
        c->add_option("--gpk", opts->gpk, "group key")->capture_default_str();
        c->add_option("--tsk", opts->tsk, "tracing secret")->capture_default_str();
        c->add_option("--info", opts->info, "group info of the signature's epoch")->capture_default_str();
        c->add_option("--sig", opts->sig, "signature file")->capture_default_str();
        c->add_option("--uid", opts->uid, "identity to deny")->required();
        c->add_option("-m,--message", opts->message, "signed message")->required();
        c->add_option("--seed", opts->seed, "master seed")->each([opts](const std::string&) {
            opts->seed_given = true;
        });
        c->add_option("--out", opts->out_path, "denial proof output")->capture_default_str();
        c->callback([&, opts] {
            uint64_t seed = resolve_seed(opts->seed_given, opts->seed);
            out.kv("seed", seed);
            Loaded l = load_common(opts->gpk, opts->info);
            const Params& p = l.gpk.pp.par;
            TracingSecretKey tsk = load_tsk(read_file(opts->tsk), p);
            Signature sig;
            if (!load_or_reject(out, [&] {
                    sig = load_signature(read_file(opts->sig), l.gpk, l.info);
                })) {
                rc = 1;
                return;
            }
            if (!verify(l.gpk, l.info, msg_bytes(opts->message), sig)) {
                out.kv("result", "invalid-signature");
                rc = 1;
                return;
            }
            Rng rng(seed);
            auto proof = d_trace(l.gpk, tsk, l.info, opts->uid, msg_bytes(opts->message), sig,
                                 rng);
            if (!proof) {
                out.kv("result", "cannot-deny");
                rc = 1;
                return;
            }
            write_file(opts->out_path, save_denial(p, opts->uid, *proof));
            out.kv("result", "denied");
            out.kv("uid", opts->uid);
            out.kv("out", opts->out_path);
        });
    }

    // ---- djudge ---------------------------------------------------------
    {
        auto* c = app.add_subcommand("djudge", "check a denial proof");
        struct DjudgeOpts {
            std::string gpk = "gpk.bin", info = "info.bin", sig = "sig.bin",
                        denial = "denial.bin", message;
            uint64_t seed = 0;
            bool seed_given = false;
        };
        auto opts = std::make_shared<DjudgeOpts>();
        c->add_option("--gpk", opts->gpk, "group key")->capture_default_str();
        c->add_option("--info", opts->info, "group info of the signature's epoch")->capture_default_str();
        c->add_option("--sig", opts->sig, "signature file")->capture_default_str();
        c->add_option("--denial", opts->denial, "denial proof file")->capture_default_str();
        c->add_option("-m,--message", opts->message, "signed message")->required();
        c->add_option("--seed", opts->seed, "master seed")->each([opts](const std::string&) {
            opts->seed_given = true;
        });
        c->callback([&, opts] {
            out.kv("seed", resolve_seed(opts->seed_given, opts->seed));
            Loaded l = load_common(opts->gpk, opts->info);
            Signature sig;
            uint32_t uid = 0;
            NizkProof proof;
            if (!load_or_reject(out, [&] {
                    sig = load_signature(read_file(opts->sig), l.gpk, l.info);
                    auto den = load_denial(read_file(opts->denial), l.gpk, sig);
                    uid = den.first;
                    proof = std::move(den.second);
                })) {
                rc = 1;
                return;
            }
            bool ok = d_judge(l.gpk, l.info, uid, msg_bytes(opts->message), sig, proof);
            out.kv("uid", uid);
            out.kv("result", ok ? "accept" : "reject");
            rc = ok ? 0 : 1;
        });
    }

    // ---- run-scenario ---------------------------------------------------
    {
        auto* c = app.add_subcommand("run-scenario", "run a scripted group scenario");
        struct ScenarioOpts {
            std::string profile, script;
            uint64_t seed = 0;
            bool seed_given = false;
        };
        auto opts = std::make_shared<ScenarioOpts>();
        c->add_option("--profile", opts->profile, "parameter profile (default $FDGS_PROFILE or T1)");
        c->add_option("--script", opts->script, "script file, '-' for standard input")->required();
        c->add_option("--seed", opts->seed, "master seed")->each([opts](const std::string&) {
            opts->seed_given = true;
        });
        c->callback([&, opts] {
            Params p = resolve_profile(opts->profile);
            uint64_t seed = resolve_seed(opts->seed_given, opts->seed);
            out.kv("seed", seed);
            ScenarioResult res = run_scenario(p, seed, read_script(opts->script));
            for (const auto& line : res.log) std::cout << line << "\n";
            out.kv("scenario_ok", res.ok ? "1" : "0");
            rc = res.ok ? 0 : 1;
        });
    }

    // ---- run-corr-experiment --------------------------------------------
    {
        auto* c = app.add_subcommand("run-corr-experiment",
                                     "run randomized correctness trials");
        struct CorrOpts {
            std::string profile;
            uint32_t trials = 50;
            uint64_t seed = 0;
            bool seed_given = false;
        };
        auto opts = std::make_shared<CorrOpts>();
        c->add_option("--profile", opts->profile, "parameter profile (default $FDGS_PROFILE or T1)");
        c->add_option("--trials", opts->trials, "number of trials")->capture_default_str();
        c->add_option("--seed", opts->seed, "master seed")->each([opts](const std::string&) {
            opts->seed_given = true;
        });
        c->callback([&, opts] {
            Params p = resolve_profile(opts->profile);
            uint64_t seed = resolve_seed(opts->seed_given, opts->seed);
            out.kv("seed", seed);
            require(opts->trials >= 1, Err::OutOfRange, "trials must be at least 1");
            CorrResult res = run_corr_experiment(p, opts->trials, seed);
            for (const auto& line : res.log) out.say(line);
            out.kv("trials", res.trials);
            out.kv("failures", res.failures);
            out.kv("signature_bytes", res.sig_bytes);
            out.kv("trace_proof_bytes", res.trace_proof_bytes);
            out.kv("denial_proof_bytes", res.denial_proof_bytes);
            rc = res.failures == 0 ? 0 : 1;
        });
    }

    // ---- bench ----------------------------------------------------------
    {
        auto* c = app.add_subcommand("bench", "timing and size report");
        struct BenchOpts {
            std::string profile;
            uint32_t reps = 20;
            uint64_t seed = 0;
            bool seed_given = false;
        };
        auto opts = std::make_shared<BenchOpts>();
        c->add_option("--profile", opts->profile, "parameter profile (default $FDGS_PROFILE or T1)");
        c->add_option("--reps", opts->reps, "repetitions per timing")->capture_default_str();
        c->add_option("--seed", opts->seed, "master seed")->each([opts](const std::string&) {
            opts->seed_given = true;
        });
        c->callback([&, opts] {
            Params p = resolve_profile(opts->profile);
            uint64_t seed = resolve_seed(opts->seed_given, opts->seed);
            out.kv("seed", seed);
            for (const auto& row : run_bench(p, seed, opts->reps)) out.kv(row.key, row.value);
        });
    }

    // global flags may trail the subcommand name; let them fall through upward
    for (CLI::App* sc : app.get_subcommands([](CLI::App*) { return true; })) sc->fallthrough();

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const FdgsError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}

} // namespace fdgs
