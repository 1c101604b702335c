#pragma once

#include <string>
#include <vector>

#include "fdgs/scheme.hpp"

namespace fdgs {

// In-memory driver state for a whole group run: one authority of each kind,
// the mutable group, every published epoch, every member secret, every
// recorded signature.  Signatures verify against the epoch they were made in.
struct SigRecord {
    uint32_t epoch = 0;
    std::string message;
    Signature sig;
};

struct GroupRun {
    PublicParams pp;
    GroupPublicKey gpk;
    BitVec msk;
    TracingSecretKey tsk;
    GroupState st;
    std::vector<GroupInfo> history;  // history[e] belongs to epoch e
    std::vector<BitVec> user_x;      // uid -> member secret
    std::vector<SigRecord> sigs;
    std::vector<uint32_t> pending;   // revocations queued for the next update
    Rng rng;

    GroupRun(const Params& p, uint64_t seed);

    const GroupInfo& info() const { return history.back(); }
    uint32_t join(uint64_t user_seed);
    void update();
};

// Scripted run.  One command per line, '#' starts a comment:
//   join <seed>           issue a member keyed from <seed>
//   revoke <uid>          queue a revocation for the next update
//   update                apply queued revocations, advance the epoch
//   sign <uid> <msg...>   sign under the current epoch; records a ref
//   verify <ref>          verify a recorded signature in its own epoch
//   trace <ref>           verify, open the signature, judge the opening
//   deny <ref> <uid>      verify, then prove the signature avoids <uid>
// ok stays true while every produced artifact checks out.  Expected
// rejections (signing without a witness, denying the actual signer) leave it
// alone.  A malformed script throws Malformed.
struct ScenarioResult {
    std::vector<std::string> log;
    bool ok = true;
};

ScenarioResult run_scenario(const Params& p, uint64_t seed, const std::string& script);

// Randomized correctness trials.  Each trial builds a fresh group, joins a
// few members, revokes one of them, updates, signs with a random active
// member, then requires: the signature verifies, tracing names the actual
// signer, the trace proof convinces the judge, and a denial for some other
// member convinces the denial judge.
struct CorrResult {
    uint32_t trials = 0;
    uint32_t failures = 0;
    uint64_t sig_bytes = 0;           // serialized signature, last trial
    uint64_t trace_proof_bytes = 0;   // serialized opening proof, last trial
    uint64_t denial_proof_bytes = 0;  // serialized denial proof, last trial
    std::vector<std::string> log;     // one line per trial
};

CorrResult run_corr_experiment(const Params& p, uint32_t trials, uint64_t seed);

// Timing medians over `reps` repetitions, label-write counts and artifact
// sizes for one profile.
struct BenchRow {
    std::string key;
    std::string value;
};

std::vector<BenchRow> run_bench(const Params& p, uint64_t seed, uint32_t reps = 20);

} // namespace fdgs
