#include "fdgs/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <sstream>

#include "fdgs/errors.hpp"
#include "fdgs/io.hpp"

namespace fdgs {

namespace {

std::span<const uint8_t> msg_bytes(const std::string& s) {
    return {reinterpret_cast<const uint8_t*>(s.data()), s.size()};
}

std::string fmt_double(double v, const char* spec = "%.2f") {
    char buf[32];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    size_t n = v.size();
    return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

// median wall time in ms of `reps` runs of f()
template <typename F>
double timed_median(uint32_t reps, F&& f) {
    std::vector<double> samples;
    samples.reserve(reps);
    for (uint32_t i = 0; i < reps; ++i) {
        auto t0 = std::chrono::steady_clock::now();
        f();
        auto t1 = std::chrono::steady_clock::now();
        samples.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return median_of(std::move(samples));
}

} // namespace

GroupRun::GroupRun(const Params& p, uint64_t seed) : rng(seed ^ 0x9e3779b97f4a7c15ull) {
    pp = setup(p, seed);
    Rng gm_rng(seed + 1);
    GmKeys gm = gm_keygen(pp, gm_rng);
    TracingKeys tm = tm_keygen(p, seed + 2);
    gpk.pp = pp;
    gpk.mpk = gm.mpk;
    gpk.tpk_present = true;
    gpk.tpk = tm.pk;
    msk = gm.msk;
    tsk = tm.sk;
    st = empty_group(pp);
    history.push_back(initial_info(pp, st));
}

uint32_t GroupRun::join(uint64_t user_seed) {
    Rng urng(user_seed);
    UserKey key = user_keygen(pp, urng);
    uint32_t uid = join_issue(pp, st, key.p);
    if (user_x.size() <= uid) user_x.resize(uid + 1);
    user_x[uid] = key.x;
    return uid;
}

void GroupRun::update() {
    history.push_back(group_update(pp, st, pending));
    pending.clear();
}

ScenarioResult run_scenario(const Params& p, uint64_t seed, const std::string& script) {
    ScenarioResult res;
    GroupRun run(p, seed);
    res.log.push_back("setup profile=" + p.profile_name + " epoch=0");

    std::istringstream lines(script);
    std::string line;
    uint32_t lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream words(line);
        std::string cmd;
        if (!(words >> cmd)) continue;

        auto bad = [&](const std::string& what) {
            fail(Err::Malformed, "script line " + std::to_string(lineno) + ": " + what);
        };
        auto need_u64 = [&](const char* what) {
            uint64_t v;
            if (!(words >> v)) bad(std::string("expected ") + what);
            return v;
        };
        auto need_ref = [&]() {
            uint64_t r = need_u64("signature ref");
            if (r >= run.sigs.size()) bad("unknown signature ref");
            return uint32_t(r);
        };

        if (cmd == "join") {
            uint64_t s = need_u64("seed");
            uint32_t uid = run.join(s);
            res.log.push_back("join uid=" + std::to_string(uid));
        } else if (cmd == "revoke") {
            uint32_t uid = uint32_t(need_u64("uid"));
            run.pending.push_back(uid);
            res.log.push_back("revoke uid=" + std::to_string(uid) + " queued");
        } else if (cmd == "update") {
            run.update();
            uint32_t active = 0;
            for (uint32_t uid = 0; uid < run.st.reg.counter; ++uid)
                if (is_active(run.info(), run.st.reg, uid)) ++active;
            res.log.push_back("update epoch=" + std::to_string(run.info().epoch) +
                              " active=" + std::to_string(active));
        } else if (cmd == "sign") {
            uint32_t uid = uint32_t(need_u64("uid"));
            if (uid >= run.user_x.size() || run.user_x[uid].empty()) bad("unknown uid");
            std::string message;
            std::getline(words, message);
            if (!message.empty() && message.front() == ' ') message.erase(0, 1);
            auto sig = sign(run.gpk, run.info(), uid, run.user_x[uid], msg_bytes(message),
                            run.rng);
            if (!sig) {
                res.log.push_back("sign uid=" + std::to_string(uid) + " -> rejected");
            } else {
                run.sigs.push_back({run.info().epoch, message, std::move(*sig)});
                res.log.push_back("sign uid=" + std::to_string(uid) +
                                  " ref=" + std::to_string(run.sigs.size() - 1));
            }
        } else if (cmd == "verify") {
            uint32_t ref = need_ref();
            const SigRecord& rec = run.sigs[ref];
            bool okv = verify(run.gpk, run.history[rec.epoch], msg_bytes(rec.message), rec.sig);
            res.log.push_back("verify ref=" + std::to_string(ref) +
                              (okv ? " -> accept" : " -> reject"));
            if (!okv) res.ok = false;
        } else if (cmd == "trace") {
            uint32_t ref = need_ref();
            const SigRecord& rec = run.sigs[ref];
            const GroupInfo& at = run.history[rec.epoch];
            if (!verify(run.gpk, at, msg_bytes(rec.message), rec.sig)) {
                res.log.push_back("trace ref=" + std::to_string(ref) + " -> invalid-signature");
                res.ok = false;
                continue;
            }
            auto tr = trace(run.gpk, run.tsk, at, run.st.reg, msg_bytes(rec.message), rec.sig,
                            run.rng);
            if (!tr) {
                res.log.push_back("trace ref=" + std::to_string(ref) + " -> untraceable");
                res.ok = false;
                continue;
            }
            bool okj = judge(run.gpk, tr->uid, at, msg_bytes(rec.message), rec.sig, tr->proof);
            res.log.push_back("trace ref=" + std::to_string(ref) + " -> uid=" +
                              std::to_string(tr->uid) +
                              (okj ? " judge=accept" : " judge=reject"));
            if (!okj) res.ok = false;
        } else if (cmd == "deny") {
            uint32_t ref = need_ref();
            uint32_t uid = uint32_t(need_u64("uid"));
            const SigRecord& rec = run.sigs[ref];
            const GroupInfo& at = run.history[rec.epoch];
            if (!verify(run.gpk, at, msg_bytes(rec.message), rec.sig)) {
                res.log.push_back("deny ref=" + std::to_string(ref) + " -> invalid-signature");
                res.ok = false;
                continue;
            }
            auto dp = d_trace(run.gpk, run.tsk, at, uid, msg_bytes(rec.message), rec.sig,
                              run.rng);
            if (!dp) {
                res.log.push_back("deny ref=" + std::to_string(ref) + " uid=" +
                                  std::to_string(uid) + " -> cannot-deny");
                continue;
            }
            bool okd = d_judge(run.gpk, at, uid, msg_bytes(rec.message), rec.sig, *dp);
            res.log.push_back("deny ref=" + std::to_string(ref) + " uid=" +
                              std::to_string(uid) +
                              (okd ? " -> judge=accept" : " -> judge=reject"));
            if (!okd) res.ok = false;
        } else {
            bad("unknown command '" + cmd + "'");
        }
    }
    return res;
}

CorrResult run_corr_experiment(const Params& p, uint32_t trials, uint64_t seed) {
    CorrResult res;
    res.trials = trials;
    Rng master(seed);
    for (uint32_t t = 0; t < trials; ++t) {
        uint64_t trial_seed = master.next_u64();
        std::string note = "trial " + std::to_string(t);
        bool failed = false;
        auto mark = [&](const std::string& why) {
            failed = true;
            note += " FAIL " + why;
        };
        try {
            GroupRun run(p, trial_seed);
            Rng& rng = run.rng;

            uint32_t max_join = std::min<uint32_t>(p.N, 5);
            uint32_t joins = 2 + rng.uniform(max_join - 1);
            for (uint32_t j = 0; j < joins; ++j) run.join(rng.next_u64());
            run.pending.push_back(rng.uniform(joins));
            run.update();

            std::vector<uint32_t> active;
            for (uint32_t uid = 0; uid < run.st.reg.counter; ++uid)
                if (is_active(run.info(), run.st.reg, uid)) active.push_back(uid);
            if (active.empty()) {
                mark("no active member");
            } else {
                uint32_t signer = active[rng.uniform(uint32_t(active.size()))];
                std::string message = "corr-" + std::to_string(t);
                auto sig = sign(run.gpk, run.info(), signer, run.user_x[signer],
                                msg_bytes(message), rng);
                if (!sig) {
                    mark("sign refused");
                } else {
                    res.sig_bytes = save_signature(p, *sig).size();
                    if (!verify(run.gpk, run.info(), msg_bytes(message), *sig))
                        mark("verify=0");
                    auto tr = trace(run.gpk, run.tsk, run.info(), run.st.reg,
                                    msg_bytes(message), *sig, rng);
                    if (!tr)
                        mark("untraceable");
                    else {
                        ByteWriter tw;
                        write_proof(tw, tr->proof, p.q);
                        res.trace_proof_bytes = tw.size();
                        if (tr->uid != signer)
                            mark("traced uid=" + std::to_string(tr->uid) + " expected " +
                                 std::to_string(signer));
                        if (!judge(run.gpk, tr->uid, run.info(), msg_bytes(message), *sig,
                                   tr->proof))
                            mark("judge=0");
                    }
                    std::vector<uint32_t> others;
                    for (uint32_t uid = 0; uid < run.st.reg.counter; ++uid)
                        if (uid != signer) others.push_back(uid);
                    if (!others.empty()) {
                        uint32_t denied = others[rng.uniform(uint32_t(others.size()))];
                        auto dp = d_trace(run.gpk, run.tsk, run.info(), denied,
                                          msg_bytes(message), *sig, rng);
                        if (!dp) {
                            mark("denial refused");
                        } else {
                            ByteWriter dw;
                            write_proof(dw, *dp, p.q);
                            res.denial_proof_bytes = dw.size();
                            if (!d_judge(run.gpk, run.info(), denied, msg_bytes(message),
                                         *sig, *dp))
                                mark("djudge=0");
                        }
                        note += " signer=" + std::to_string(signer) +
                                " denied=" + std::to_string(denied);
                    } else {
                        note += " signer=" + std::to_string(signer) + " denial-skipped";
                    }
                }
            }
        } catch (const std::exception& e) {
            mark(std::string("exception: ") + e.what());
        }
        if (failed) ++res.failures;
        if (!failed) note += " ok";
        res.log.push_back(note);
    }
    return res;
}

std::vector<BenchRow> run_bench(const Params& p, uint64_t seed, uint32_t reps) {
    require(reps >= 1, Err::OutOfRange, "bench needs at least one repetition");
    std::vector<BenchRow> rows;
    rows.push_back({"profile", p.profile_name});
    rows.push_back({"reps", std::to_string(reps)});

    GroupRun run(p, seed);
    uint32_t members = std::max<uint32_t>(2, p.N / 2);
    for (uint32_t j = 0; j + 1 < members; ++j) run.join(run.rng.next_u64());
    uint64_t before = run.st.tree.labels_written;
    uint32_t last = run.join(run.rng.next_u64());
    rows.push_back({"labels_per_update", std::to_string(run.st.tree.labels_written - before)});
    rows.push_back({"labels_full_rebuild", std::to_string(2u * p.N - 1)});
    run.update();

    const std::vector<BitVec>& leaves = run.st.tree.levels[run.st.tree.depth];
    double acc_ms = timed_median(reps, [&] { t_acc(run.pp.hk, leaves, p); });
    BitVec probe = run.st.tree.leaf(last);
    BitVec path = index_to_path(last, p.ell);
    double upd_ms = timed_median(reps, [&] {
        MerkleTree t = run.st.tree;
        t_update(t, run.pp.hk, path, probe, p);
    });
    rows.push_back({"t_acc_ms", fmt_double(acc_ms, "%.3f")});
    rows.push_back({"t_update_ms", fmt_double(upd_ms, "%.3f")});

    std::string message = "bench";
    std::optional<Signature> sig;
    double sign_ms = timed_median(reps, [&] {
        sig = sign(run.gpk, run.info(), last, run.user_x[last], msg_bytes(message), run.rng);
        require(sig.has_value(), Err::WitnessRejected, "bench member cannot sign");
    });
    // the non-proving part of sign, to estimate the fs_prove share
    double prep_ms = timed_median(reps, [&] {
        auto enc = encrypt_pair(run.gpk.tpk, path, p, run.rng);
        GsStatement st(p, run.pp.hk, run.info().root, run.gpk.tpk, enc.ct);
        auto wit = assemble_gs_witness(p, run.pp.hk, run.user_x[last],
                                       *run.info().witnesses[last], enc.r1, enc.r2);
        pack_gs_witness(GsLayout::from(p), wit);
    });
    double verify_ms = timed_median(reps, [&] {
        require(verify(run.gpk, run.info(), msg_bytes(message), *sig),
                Err::InstanceUnsatisfiable, "bench signature rejects");
    });
    std::optional<TraceResult> tr;
    double trace_ms = timed_median(reps, [&] {
        tr = trace(run.gpk, run.tsk, run.info(), run.st.reg, msg_bytes(message), *sig,
                   run.rng);
        require(tr.has_value(), Err::InstanceUnsatisfiable, "bench trace fails");
    });
    double judge_ms = timed_median(reps, [&] {
        require(judge(run.gpk, tr->uid, run.info(), msg_bytes(message), *sig, tr->proof),
                Err::InstanceUnsatisfiable, "bench opening rejects");
    });
    uint32_t denied = (tr->uid + 1) % std::max<uint32_t>(1, run.st.reg.counter);
    std::optional<NizkProof> dp;
    double deny_ms = timed_median(reps, [&] {
        dp = d_trace(run.gpk, run.tsk, run.info(), denied, msg_bytes(message), *sig,
                     run.rng);
        require(dp.has_value(), Err::InstanceUnsatisfiable, "bench denial fails");
    });
    double djudge_ms = timed_median(reps, [&] {
        require(d_judge(run.gpk, run.info(), denied, msg_bytes(message), *sig, *dp),
                Err::InstanceUnsatisfiable, "bench denial rejects");
    });

    rows.push_back({"sign_ms", fmt_double(sign_ms)});
    rows.push_back({"verify_ms", fmt_double(verify_ms)});
    rows.push_back({"trace_ms", fmt_double(trace_ms)});
    rows.push_back({"judge_ms", fmt_double(judge_ms)});
    rows.push_back({"deny_ms", fmt_double(deny_ms)});
    rows.push_back({"djudge_ms", fmt_double(djudge_ms)});
    double fs_fraction = sign_ms > 0 ? (sign_ms - std::min(prep_ms, sign_ms)) / sign_ms : 0;
    rows.push_back({"sign_fs_fraction", fmt_double(fs_fraction)});

    rows.push_back({"gpk_bytes", std::to_string(save_gpk(run.gpk).size())});
    rows.push_back({"signature_bytes", std::to_string(save_signature(p, *sig).size())});
    GsStatement st = make_sign_statement(run.gpk, run.info(), sig->ct);
    rows.push_back({"proof_bytes_expected", fmt_double(expected_proof_bytes(st, p.kappa), "%.0f")});
    rows.push_back({"statement_dim", std::to_string(st.dim())});
    return rows;
}

} // namespace fdgs
