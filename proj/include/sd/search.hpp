#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sd/classify.hpp"
#include "sd/core.hpp"

namespace sd {

/// Coordinate box in normal form. Bounds per group:
///   ZD      one (lo,hi) window per coordinate
///   HEIS    |i|,|j| <= r1, |k| <= r2
///   FIB     |u| <= r1, |v| <= r2, |n| <= r3
///   BS12    numerator |p| <= r1, e <= r2, |n| <= r3
struct BallSpec {
    GroupTag tag;
    std::vector<std::pair<long long, long long>> zd_windows;  // ZD only
    long long r1 = 0, r2 = 0, r3 = 0;

    std::string describe() const;
};

FiniteSubset enumerate_ball(const BallSpec& spec);

/// ZD: "lo..hi" windows or radii, ';' or ',' separated, one per coordinate
/// (a single entry is reused). Others: "r1,r2[,r3]" as in BallSpec.
BallSpec parse_ball_spec(const GroupTag& tag, const std::string& text);

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Lexicographic k-combinations of {0..n-1} addressable by rank, so the
/// index space can be split across workers.
struct CombinationCursor {
    std::vector<std::size_t> idx;
    std::size_t n = 0;

    static CombinationCursor at_rank(std::size_t n, std::size_t k, std::uint64_t rank);
    bool advance();
};

enum class TaskKind {
    TheoremC,
    TheoremD,
    Theorem1,
    LemmaExt,
    Prop11Cert,
    TripleProps,
    Converses,
};

std::string to_string(TaskKind kind);
std::optional<TaskKind> parse_task_kind(const std::string& name);

struct VerificationTask {
    TaskKind kind;
    std::optional<BallSpec> ball;
    std::vector<int> ks;                    // subset sizes to sweep
    std::vector<Element> certificate;       // Prop11Cert; the triple T for LemmaExt
    std::map<std::string, std::string> options;
};

/// Emitted only when a theorem's conclusion fails on a subset.
struct Finding {
    std::string task;
    std::vector<std::string> subset;  // element literals
    long long square_size = 0;
    std::string expected;
    std::string outcome;

    std::string to_json() const;
};

struct VerificationSummary {
    std::string task;
    std::string group;
    std::string ball;
    std::string k;
    std::uint64_t subsets_examined = 0;
    std::vector<Finding> findings;
    double seconds = 0.0;
    std::optional<std::string> error;
};

struct RunConfig {
    std::vector<VerificationTask> tasks;
    int workers = 1;
    bool report_timing = true;  // "timing = none" zeroes the seconds column
    std::string findings_path;  // empty: stdout
    std::string summary_path;   // empty: stdout
};

/// key = value lines; "task = <kind>" opens a task block, later keys attach
/// to it. Unknown keys are errors.
RunConfig parse_run_config(const std::string& text);

VerificationSummary verify_theorem_C(const VerificationTask& task, int workers = 1);
VerificationSummary verify_theorem_D(const VerificationTask& task, int workers = 1);
VerificationSummary verify_theorem_1(const VerificationTask& task, int workers = 1);
VerificationSummary verify_lemma_extension(const VerificationTask& task);
VerificationSummary verify_prop11_certificate(const VerificationTask& task, int workers = 1);
VerificationSummary verify_triple_props(const VerificationTask& task, int workers = 1);
VerificationSummary verify_converses(const VerificationTask& task);

/// Runs every task; per-task errors are recorded in the summary and do not
/// abort the batch. Results are deterministic and independent of the worker
/// count.
std::vector<VerificationSummary> run_tasks(const RunConfig& config);

std::string summaries_to_csv(const std::vector<VerificationSummary>& summaries,
                             bool report_timing);
std::string findings_to_jsonl(const std::vector<VerificationSummary>& summaries);

/// Default generation certificates, discharging the "<S> = G" hypotheses:
/// {b, b a} generates FIB, {b, b a} generates BS12.
std::vector<Element> default_certificate(const GroupTag& tag);

}  // namespace sd
