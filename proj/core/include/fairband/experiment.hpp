#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fairband/audit.hpp"
#include "fairband/bandit_instance.hpp"
#include "fairband/types.hpp"

namespace fairband {

// Thrown on malformed configs (unknown algorithm or family, bad values);
// the CLI maps it to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Thrown on unwritable/unreadable paths; the CLI maps it to exit code 3.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    std::string algorithm;          // fair_bandits | ucb | uniform | conjunction_bandit |
                                    // kwik_to_fair | kwik_to_fair_doubling
    std::string family;             // lower_bound | classic | linear | conjunction
    int k = 2;
    int d = 0;                      // context dimension for linear/conjunction
    std::vector<double> means;      // explicit means for family = classic
    double delta = 0.1;
    double epsilon = 0.0;           // reserved for KWIK-style runs
    std::int64_t horizon = 1000;
    int trials = 1;
    std::uint64_t seed = 0;
    std::string out_dir;
    int jobs = 1;
    std::int64_t interval_stride = 1;  // row stride of the interval dump

    void validate() const;
};

// Parse a config from JSON text (the CLI reads the file). Unknown enum values
// raise ConfigError naming the offending key.
ExperimentConfig parse_config_json(const std::string& json_text);

// Result of one trial, kept in memory so that writing is independent of the
// execution order of parallel trials.
struct TrialResult {
    int trial = 0;
    BanditInstance instance;
    Trace trace;
    ViolationReport report;
    std::vector<double> cumulative_regret;
    // per-round per-arm interval rows (fair_bandits only): t, arm, lower, upper, active
    struct IntervalRow {
        std::int64_t t;
        int arm;
        double lower;
        double upper;
        int active;
    };
    std::vector<IntervalRow> intervals;
    std::vector<std::optional<double>> last_predictions;  // reductions only
    std::int64_t dont_know_rounds = 0;                    // rounds where some learner abstained
    // per-round predictions/abstention flags for the trace CSV (reductions only)
    std::vector<std::vector<std::optional<double>>> prediction_rows;
};

// Run one trial in memory. Exposed for tests and the acceptance suite.
TrialResult run_trial(const ExperimentConfig& config, int trial);

// Run all trials (in parallel up to config.jobs) and write outputs under
// config.out_dir: trace_<trial>.csv, regret.csv, audit_summary.json, and for
// fair_bandits runs intervals_<trial>.csv. Byte-identical for identical
// configs regardless of job count.
void run_experiment(const ExperimentConfig& config);

struct SweepRow {
    double value = 0.0;
    double mean_cumulative_regret = 0.0;
    double mean_per_round_regret = 0.0;
    double violation_fraction = 0.0;
    double mean_dont_know_rounds = 0.0;
};

// One row per axis value; axis is one of "k", "d", "T".
std::vector<SweepRow> sweep(const ExperimentConfig& base, const std::string& axis,
                            const std::vector<double>& values);

struct KwikBoundConfig;

// Sweep a learner run instead of a bandit run: the dont-know column carries
// the abstention count (e.g. the adversarial conjunction stream gives exactly
// 2^d - 1 per d). Axis is one of "d", "T".
std::vector<SweepRow> sweep_kwik_bound(const KwikBoundConfig& base, const std::string& axis,
                                       const std::vector<double>& values);

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& axis, const std::string& path);

// Re-audit traces previously written by run_experiment.
struct StoredAudit {
    int run_id = 0;
    bool violated = false;
    std::int64_t first_violation_round = 0;
    std::int64_t count = 0;
};
std::vector<StoredAudit> audit_stored_traces(const std::string& dir);

// kwik-bound runs: drive a learner over a generated or adversarial sequence
// and report its abstention count against the declared cap.
struct KwikBoundConfig {
    std::string learner;  // bernoulli_mean | noiseless_linear | enum_conjunction | fair_to_kwik
    std::string sequence = "random";  // random | adversarial (enum_conjunction only)
    int d = 3;
    double epsilon = 0.1;
    double delta = 0.05;
    std::int64_t horizon = 1000;
    std::uint64_t seed = 0;
    double dial_target = 0.9;  // fair_to_kwik: constant query with this payoff
};
KwikBoundConfig parse_kwik_bound_json(const std::string& json_text);

struct KwikBoundResult {
    std::int64_t dont_know_count = 0;
    double declared_bound = 0.0;
    double max_value_error = 0.0;
    std::int64_t value_count = 0;
    bool within_bound = false;
};
KwikBoundResult run_kwik_bound(const KwikBoundConfig& config);

// Serialize helpers shared by the CLI and the tests.
std::string format_double(double v);
void write_text_file(const std::string& path, const std::string& text);
std::string instance_json(const BanditInstance& instance, const std::string& family, std::uint64_t seed);

}  // namespace fairband
