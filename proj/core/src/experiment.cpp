#include "fairband/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>
#include <variant>

#include "json.hpp"

#include "fairband/baselines.hpp"
#include "fairband/fair_bandits.hpp"
#include "fairband/instances.hpp"
#include "fairband/kwik.hpp"
#include "fairband/reductions.hpp"

namespace fairband {

namespace fs = std::filesystem;
using nlohmann::json;

// ---------------------------------------------------------------------------
// Formatting and file helpers
// ---------------------------------------------------------------------------
std::string format_double(double v) {
    // shortest round-trip form; '.' decimal point regardless of locale
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw std::runtime_error("format_double failed");
    return std::string(buf, ptr);
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << text;
    if (!out) throw IoError("write failed: " + path);
}

namespace {

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Config parsing
// ---------------------------------------------------------------------------
void ExperimentConfig::validate() const {
    static const std::vector<std::string> algorithms{"fair_bandits",       "ucb",
                                                     "uniform",            "conjunction_bandit",
                                                     "kwik_to_fair",       "kwik_to_fair_doubling"};
    static const std::vector<std::string> families{"lower_bound", "classic", "linear", "conjunction"};
    if (std::find(algorithms.begin(), algorithms.end(), algorithm) == algorithms.end())
        throw ConfigError("unknown algorithm: \"" + algorithm + "\"");
    if (std::find(families.begin(), families.end(), family) == families.end())
        throw ConfigError("unknown family: \"" + family + "\"");
    if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta must be in (0,1)");
    if (horizon < 1) throw ConfigError("horizon must be >= 1");
    if (trials < 1) throw ConfigError("trials must be >= 1");
    if (jobs < 1) throw ConfigError("jobs must be >= 1");
    if (interval_stride < 1) throw ConfigError("interval_stride must be >= 1");
    if (family == "classic" && means.empty()) throw ConfigError("family classic needs explicit means");
    if (family != "classic" && k < 2) throw ConfigError("k must be >= 2");
    if ((family == "linear" || family == "conjunction") && d < 1)
        throw ConfigError("family " + family + " needs d >= 1");
    const bool classic_family = family == "lower_bound" || family == "classic";
    if ((algorithm == "fair_bandits" || algorithm == "ucb" || algorithm == "uniform") && !classic_family)
        throw ConfigError("algorithm " + algorithm + " needs a classic family");
    if (algorithm == "conjunction_bandit" && family != "conjunction")
        throw ConfigError("algorithm conjunction_bandit needs family conjunction");
    if ((algorithm == "kwik_to_fair" || algorithm == "kwik_to_fair_doubling") && family == "conjunction")
        throw ConfigError("kwik_to_fair runs on classic or linear families");
}

namespace {

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("bad value for key \"") + key + "\"");
    }
}

}  // namespace

ExperimentConfig parse_config_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    ExperimentConfig c;
    c.algorithm = get_or<std::string>(j, "algorithm", "");
    if (j.contains("instance")) {
        const json& inst = j.at("instance");
        c.family = get_or<std::string>(inst, "family", "");
        c.k = get_or<int>(inst, "k", c.k);
        c.d = get_or<int>(inst, "d", c.d);
        c.means = get_or<std::vector<double>>(inst, "means", {});
        if (!c.means.empty()) c.k = static_cast<int>(c.means.size());
    }
    c.delta = get_or<double>(j, "delta", c.delta);
    c.epsilon = get_or<double>(j, "epsilon", c.epsilon);
    c.horizon = get_or<std::int64_t>(j, "horizon", c.horizon);
    c.trials = get_or<int>(j, "trials", c.trials);
    c.seed = get_or<std::uint64_t>(j, "seed", c.seed);
    c.out_dir = get_or<std::string>(j, "out", c.out_dir);
    c.jobs = get_or<int>(j, "jobs", c.jobs);
    c.interval_stride = get_or<std::int64_t>(j, "interval_stride", c.interval_stride);
    c.validate();
    return c;
}

// ---------------------------------------------------------------------------
// One trial
// ---------------------------------------------------------------------------
namespace {

struct FamilyRuntime {
    BanditInstance instance;
    std::optional<LinearInstance> linear;
    std::optional<ConjunctionInstance> conjunction;

    std::vector<Context> contexts(int k, Rng& rng) const {
        if (linear) return linear->sample_contexts(rng);
        if (conjunction) return conjunction->sample_contexts(rng);
        return std::vector<Context>(static_cast<std::size_t>(k), UnitContext{});
    }
};

FamilyRuntime make_family(const ExperimentConfig& config, Rng& rng) {
    FamilyRuntime out;
    if (config.family == "classic") {
        out.instance = make_classic_instance(config.means);
    } else if (config.family == "lower_bound") {
        out.instance = sample_lower_bound_instance(config.k, rng).instance();
    } else if (config.family == "linear") {
        out.linear = make_linear_instance(config.d, config.k, rng);
        out.instance = out.linear->instance;
    } else {
        out.conjunction = make_conjunction_instance(config.d, config.k, rng);
        out.instance = out.conjunction->instance;
    }
    return out;
}

LearnerFactory learner_factory_for(const ExperimentConfig& config) {
    if (config.family == "linear") {
        const int d = config.d;
        return [d](int, double, double) -> std::unique_ptr<KwikLearner> {
            return std::make_unique<LinearPayoffLearner>(d);
        };
    }
    return [](int, double eps, double delta) -> std::unique_ptr<KwikLearner> {
        return std::make_unique<BernoulliMeanLearner>(eps, delta);
    };
}

KwikBoundFn bound_for(const ExperimentConfig& config) {
    if (config.family == "linear") return KwikBoundFn::constant(static_cast<double>(config.d) + 1.0);
    return KwikBoundFn::hoeffding();
}

}  // namespace

TrialResult run_trial(const ExperimentConfig& config, int trial) {
    config.validate();
    TrialResult result;
    result.trial = trial;
    Rng rng = Rng::substream(config.seed, static_cast<std::uint64_t>(trial));
    FamilyRuntime family = make_family(config, rng);
    result.instance = family.instance;
    const int k = family.instance.k;

    std::optional<FairBandits> fair;
    std::optional<UcbBaseline> ucb;
    std::optional<ConjunctionBandit> conj;
    std::optional<KwikToFair> ktf;
    std::optional<KwikToFairDoubling> ktfd;
    if (config.algorithm == "fair_bandits") fair.emplace(k, config.delta);
    else if (config.algorithm == "ucb") ucb.emplace(k);
    else if (config.algorithm == "conjunction_bandit") conj.emplace(k, config.d);
    else if (config.algorithm == "kwik_to_fair")
        ktf.emplace(k, config.delta, config.horizon, bound_for(config), learner_factory_for(config));
    else if (config.algorithm == "kwik_to_fair_doubling")
        ktfd.emplace(k, config.delta, bound_for(config), learner_factory_for(config));

    const bool track_predictions = ktf.has_value() || ktfd.has_value();

    for (std::int64_t t = 1; t <= config.horizon; ++t) {
        std::vector<Context> contexts = family.contexts(k, rng);
        ArmDistribution dist;
        int chosen = 0;
        if (fair) std::tie(dist, chosen) = fair->step(rng);
        else if (ucb) std::tie(dist, chosen) = ucb->step(rng);
        else if (conj) std::tie(dist, chosen) = conj->step(contexts, rng);
        else if (ktf) std::tie(dist, chosen) = ktf->step(contexts, rng);
        else if (ktfd) std::tie(dist, chosen) = ktfd->step(contexts, rng);
        else std::tie(dist, chosen) = uniform_step(k, rng);

        const double reward = sample_reward(family.instance, chosen, contexts[static_cast<std::size_t>(chosen)], rng);
        result.trace.append(RoundTrace{t, contexts, dist, chosen, reward});

        if (fair) fair->update(chosen, reward);
        else if (ucb) ucb->update(chosen, reward);
        else if (conj) conj->update(chosen, reward);
        else if (ktf) ktf->update(chosen, reward);
        else if (ktfd) ktfd->update(chosen, reward);

        if (fair && (t % config.interval_stride == 0 || t == config.horizon)) {
            for (int arm = 0; arm < k; ++arm) {
                const auto& a = fair->arms()[static_cast<std::size_t>(arm)];
                result.intervals.push_back(TrialResult::IntervalRow{
                    t, arm, a.interval.lower, a.interval.upper, fair->is_active(arm) ? 1 : 0});
            }
        }
        if (track_predictions) {
            const auto& info = ktf ? ktf->last_round() : ktfd->inner().last_round();
            result.prediction_rows.push_back(info.predictions);
            if (info.any_dont_know) result.dont_know_rounds += 1;
        }
    }

    result.report = audit_fairness(result.trace, family.instance);
    result.cumulative_regret = cumulative_pseudo_regret(result.trace, family.instance);
    return result;
}

// ---------------------------------------------------------------------------
// Output writers
// ---------------------------------------------------------------------------
namespace {

std::string trace_csv(const TrialResult& result, const BanditInstance& instance) {
    const int k = instance.k;
    std::ostringstream out;
    out << "t,chosen,reward";
    for (int j = 1; j <= k; ++j) out << ",p_" << j;
    for (int j = 1; j <= k; ++j) out << ",f_" << j;
    const bool preds = !result.prediction_rows.empty();
    if (preds) {
        for (int j = 1; j <= k; ++j) out << ",pred_" << j;
        out << ",dont_know";
    }
    out << "\n";
    for (std::size_t i = 0; i < result.trace.size(); ++i) {
        const RoundTrace& row = result.trace[i];
        out << row.t << ',' << row.chosen << ',' << format_double(row.reward);
        for (double p : row.distribution.probs) out << ',' << format_double(p);
        for (int j = 0; j < k; ++j)
            out << ',' << format_double(instance.payoff(j, row.contexts[static_cast<std::size_t>(j)]));
        if (preds) {
            bool any_bot = false;
            for (const auto& p : result.prediction_rows[i]) {
                out << ',';
                if (p.has_value()) out << format_double(*p);
                else any_bot = true;
            }
            out << ',' << (any_bot ? 1 : 0);
        }
        out << "\n";
    }
    return out.str();
}

std::string intervals_csv(const TrialResult& result) {
    std::ostringstream out;
    out << "t,arm,lower,upper,active\n";
    for (const auto& row : result.intervals)
        out << row.t << ',' << row.arm + 1 << ',' << format_double(row.lower) << ','
            << format_double(row.upper) << ',' << row.active << "\n";
    return out.str();
}

std::string regret_csv(const std::vector<TrialResult>& results) {
    const std::size_t T = results.front().cumulative_regret.size();
    const double n = static_cast<double>(results.size());
    std::ostringstream out;
    out << "t,mean_cumulative_regret,stderr\n";
    for (std::size_t t = 0; t < T; ++t) {
        double mean = 0.0;
        for (const auto& r : results) mean += r.cumulative_regret[t];
        mean /= n;
        double var = 0.0;
        for (const auto& r : results) {
            const double dlt = r.cumulative_regret[t] - mean;
            var += dlt * dlt;
        }
        const double se = results.size() > 1 ? std::sqrt(var / (n * (n - 1.0))) : 0.0;
        out << (t + 1) << ',' << format_double(mean) << ',' << format_double(se) << "\n";
    }
    return out.str();
}

json audit_summary_json(const ExperimentConfig& config, const std::vector<TrialResult>& results) {
    json runs = json::array();
    int violated = 0;
    for (const auto& r : results) {
        runs.push_back(json{{"run_id", r.trial},
                            {"violated", r.report.violated},
                            {"first_violation_round", r.report.first_violation_round},
                            {"count", r.report.violations.size()}});
        if (r.report.violated) ++violated;
    }
    return json{{"algorithm", config.algorithm},
                {"family", config.family},
                {"delta", config.delta},
                {"horizon", config.horizon},
                {"trials", config.trials},
                {"seed", config.seed},
                {"violation_fraction", static_cast<double>(violated) / static_cast<double>(results.size())},
                {"runs", runs}};
}

}  // namespace

std::string instance_json(const BanditInstance& instance, const std::string& family, std::uint64_t seed) {
    json j{{"k", instance.k}, {"family", family}, {"seed", seed}};
    if (family == "lower_bound" || family == "classic") {
        json means = json::array();
        for (const auto& arm : instance.arms) means.push_back(std::get<ClassicArm>(arm).mean);
        j["means"] = means;
    } else if (family == "linear") {
        json thetas = json::array();
        for (const auto& arm : instance.arms) thetas.push_back(std::get<LinearArm>(arm).theta);
        j["thetas"] = thetas;
    } else if (family == "conjunction") {
        json sets = json::array();
        for (const auto& arm : instance.arms) {
            json vars = json::array();
            const auto mask = std::get<ConjunctionArm>(arm).variables;
            for (int v = 0; v < 32; ++v)
                if (mask & (1u << v)) vars.push_back(v + 1);
            sets.push_back(vars);
        }
        j["conjunctions"] = sets;
    }
    return j.dump(2) + "\n";
}

void run_experiment(const ExperimentConfig& config) {
    config.validate();
    if (config.out_dir.empty()) throw ConfigError("missing output directory");
    std::error_code ec;
    fs::create_directories(config.out_dir, ec);
    if (ec) throw IoError("cannot create output directory: " + config.out_dir);

    std::vector<TrialResult> results(static_cast<std::size_t>(config.trials));
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto worker = [&] {
        for (;;) {
            const int trial = next.fetch_add(1);
            if (trial >= config.trials) return;
            try {
                results[static_cast<std::size_t>(trial)] = run_trial(config, trial);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mu);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    const int jobs = std::min(config.jobs, config.trials);
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(jobs));
        for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    // single writer, trial order: outputs do not depend on scheduling
    const fs::path dir(config.out_dir);
    for (const auto& r : results) {
        const std::string idx = std::to_string(r.trial);
        write_text_file((dir / ("trace_" + idx + ".csv")).string(), trace_csv(r, r.instance));
        write_text_file((dir / ("instance_" + idx + ".json")).string(),
                        instance_json(r.instance, config.family, config.seed));
        if (!r.intervals.empty())
            write_text_file((dir / ("intervals_" + idx + ".csv")).string(), intervals_csv(r));
    }
    write_text_file((dir / "regret.csv").string(), regret_csv(results));
    write_text_file((dir / "audit_summary.json").string(), audit_summary_json(config, results).dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// Sweep
// ---------------------------------------------------------------------------
std::vector<SweepRow> sweep(const ExperimentConfig& base, const std::string& axis,
                            const std::vector<double>& values) {
    if (values.empty()) throw ConfigError("sweep: empty values list");
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] <= values[i - 1]) throw ConfigError("sweep: axis values must be strictly increasing");
    if (axis != "k" && axis != "d" && axis != "T") throw ConfigError("sweep: unknown axis \"" + axis + "\"");

    std::vector<SweepRow> rows;
    for (double v : values) {
        ExperimentConfig config = base;
        if (axis == "k") config.k = static_cast<int>(v);
        else if (axis == "d") config.d = static_cast<int>(v);
        else config.horizon = static_cast<std::int64_t>(v);
        config.validate();

        SweepRow row;
        row.value = v;
        int violated = 0;
        for (int trial = 0; trial < config.trials; ++trial) {
            TrialResult r = run_trial(config, trial);
            const double cum = r.cumulative_regret.back();
            row.mean_cumulative_regret += cum;
            row.mean_per_round_regret += cum / static_cast<double>(config.horizon);
            row.mean_dont_know_rounds += static_cast<double>(r.dont_know_rounds);
            if (r.report.violated) ++violated;
        }
        const double n = static_cast<double>(config.trials);
        row.mean_cumulative_regret /= n;
        row.mean_per_round_regret /= n;
        row.mean_dont_know_rounds /= n;
        row.violation_fraction = static_cast<double>(violated) / n;
        rows.push_back(row);
    }
    return rows;
}

std::vector<SweepRow> sweep_kwik_bound(const KwikBoundConfig& base, const std::string& axis,
                                       const std::vector<double>& values) {
    if (values.empty()) throw ConfigError("sweep: empty values list");
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] <= values[i - 1]) throw ConfigError("sweep: axis values must be strictly increasing");
    if (axis != "d" && axis != "T") throw ConfigError("sweep: learner sweeps support axes d and T");

    std::vector<SweepRow> rows;
    for (double v : values) {
        KwikBoundConfig config = base;
        if (axis == "d") config.d = static_cast<int>(v);
        else config.horizon = static_cast<std::int64_t>(v);
        const KwikBoundResult result = run_kwik_bound(config);
        SweepRow row;
        row.value = v;
        row.mean_dont_know_rounds = static_cast<double>(result.dont_know_count);
        rows.push_back(row);
    }
    return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& axis, const std::string& path) {
    std::ostringstream out;
    out << axis << ",mean_cumulative_regret,mean_per_round_regret,violation_fraction,mean_dont_know_rounds\n";
    for (const auto& r : rows)
        out << format_double(r.value) << ',' << format_double(r.mean_cumulative_regret) << ','
            << format_double(r.mean_per_round_regret) << ',' << format_double(r.violation_fraction) << ','
            << format_double(r.mean_dont_know_rounds) << "\n";
    write_text_file(path, out.str());
}

// ---------------------------------------------------------------------------
// Stored-trace audit
// ---------------------------------------------------------------------------
std::vector<StoredAudit> audit_stored_traces(const std::string& dir) {
    std::vector<StoredAudit> out;
    for (int trial = 0;; ++trial) {
        const fs::path path = fs::path(dir) / ("trace_" + std::to_string(trial) + ".csv");
        if (!fs::exists(path)) break;
        const std::string text = read_text_file(path.string());
        std::istringstream in(text);
        std::string line;
        if (!std::getline(in, line)) throw IoError("empty trace file: " + path.string());
        const auto header = split_csv_line(line);
        std::vector<std::size_t> p_cols, f_cols;
        std::size_t t_col = std::string::npos;
        for (std::size_t c = 0; c < header.size(); ++c) {
            if (header[c] == "t") t_col = c;
            else if (header[c].rfind("p_", 0) == 0) p_cols.push_back(c);
            else if (header[c].rfind("f_", 0) == 0) f_cols.push_back(c);
        }
        if (t_col == std::string::npos || p_cols.empty() || p_cols.size() != f_cols.size())
            throw IoError("trace file missing p_/f_ columns: " + path.string());

        StoredAudit audit;
        audit.run_id = trial;
        std::vector<Violation> violations;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            const auto cells = split_csv_line(line);
            const std::int64_t t = std::stoll(cells.at(t_col));
            std::vector<double> probs, values;
            for (std::size_t c : p_cols) probs.push_back(std::stod(cells.at(c)));
            for (std::size_t c : f_cols) values.push_back(std::stod(cells.at(c)));
            audit_round(t, probs, values, violations);
        }
        audit.violated = !violations.empty();
        audit.first_violation_round = audit.violated ? violations.front().t : 0;
        audit.count = static_cast<std::int64_t>(violations.size());
        out.push_back(audit);
    }
    if (out.empty()) throw IoError("no trace_<n>.csv files under " + dir);
    return out;
}

// ---------------------------------------------------------------------------
// kwik-bound runs
// ---------------------------------------------------------------------------
KwikBoundConfig parse_kwik_bound_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    KwikBoundConfig c;
    c.learner = get_or<std::string>(j, "learner", "");
    c.sequence = get_or<std::string>(j, "sequence", c.sequence);
    c.d = get_or<int>(j, "d", c.d);
    c.epsilon = get_or<double>(j, "epsilon", c.epsilon);
    c.delta = get_or<double>(j, "delta", c.delta);
    c.horizon = get_or<std::int64_t>(j, "horizon", c.horizon);
    c.seed = get_or<std::uint64_t>(j, "seed", c.seed);
    c.dial_target = get_or<double>(j, "dial_target", c.dial_target);
    static const std::vector<std::string> learners{"bernoulli_mean", "noiseless_linear", "enum_conjunction",
                                                   "fair_to_kwik"};
    if (std::find(learners.begin(), learners.end(), c.learner) == learners.end())
        throw ConfigError("unknown learner: \"" + c.learner + "\"");
    if (c.sequence != "random" && c.sequence != "adversarial")
        throw ConfigError("unknown sequence: \"" + c.sequence + "\"");
    return c;
}

KwikBoundResult run_kwik_bound(const KwikBoundConfig& config) {
    Rng rng(config.seed);
    KwikBoundResult result;

    auto track = [&](const Prediction& p, double truth) {
        if (p.has_value()) {
            result.value_count += 1;
            result.max_value_error = std::max(result.max_value_error, std::abs(*p - truth));
            return false;
        }
        result.dont_know_count += 1;
        return true;
    };

    if (config.learner == "bernoulli_mean") {
        BernoulliMeanLearner learner(config.epsilon, config.delta);
        const double mu = rng.uniform01();
        for (std::int64_t t = 0; t < config.horizon; ++t) {
            if (track(learner.predict(UnitContext{}), mu))
                learner.feedback(UnitContext{}, rng.bernoulli(mu) ? 1.0 : 0.0);
        }
        result.declared_bound = learner.bound();
    } else if (config.learner == "noiseless_linear") {
        NoiselessLinearLearner learner(config.d);
        const std::vector<double> theta = sample_unit_ball(config.d, rng, /*positive_orthant=*/true);
        for (std::int64_t t = 0; t < config.horizon; ++t) {
            RealContext x{sample_unit_ball(config.d, rng, /*positive_orthant=*/true)};
            const double truth = dot(theta, x.values);
            if (track(learner.predict(x), truth)) learner.feedback(x, truth);
        }
        result.declared_bound = learner.bound();
    } else if (config.learner == "enum_conjunction") {
        ConjunctionEnumLearner learner(config.d);
        if (config.sequence == "adversarial") {
            for (const auto& [ctx, label] : adversarial_conjunction_sequence(config.d)) {
                if (track(learner.predict(ctx), label)) learner.feedback(ctx, label);
            }
        } else {
            const std::uint32_t target = static_cast<std::uint32_t>(
                rng.uniform_below(std::uint64_t{1} << config.d));
            for (std::int64_t t = 0; t < config.horizon; ++t) {
                BoolContext ctx;
                ctx.bits.resize(static_cast<std::size_t>(config.d));
                for (auto& b : ctx.bits) b = rng.bernoulli(0.5) ? 1 : 0;
                const double truth = ((target & ~ones_mask(ctx)) == 0) ? 1.0 : 0.0;
                if (track(learner.predict(ctx), truth)) learner.feedback(ctx, truth);
            }
        }
        result.declared_bound = learner.bound();
    } else {  // fair_to_kwik: wrap the classic fair policy on a two-arm dial instance
        const double Td = static_cast<double>(config.horizon);
        const double delta_star = config.epsilon == 0.0 ? config.delta / (2.0 * Td)
                                                        : config.delta * (config.epsilon / 2.0) / Td;
        FairBanditsReplay alg(2, delta_star);
        FairToKwik reduction(config.epsilon, config.delta, config.horizon, alg);
        const double v = config.dial_target;
        Context query = RealContext{{v}};
        for (std::int64_t t = 0; t < config.horizon; ++t) {
            Prediction p = reduction.step(query, [&] { return rng.bernoulli(v) ? 1.0 : 0.0; }, rng);
            track(p, v);
        }
        // committed-round regret of the wrapped policy, against the dial values
        double regret = 0.0;
        for (const auto& round : reduction.committed()) {
            const double dial = reduction.dial_value(round.level);
            const double best = std::max(v, dial);
            regret += best - (round.distribution.probs[0] * v + round.distribution.probs[1] * dial);
        }
        // implied cap from the budget inequality m*eps/8 <= regret
        result.declared_bound = config.epsilon > 0.0 ? 8.0 * regret / config.epsilon
                                                     : static_cast<double>(config.horizon);
    }
    result.within_bound = static_cast<double>(result.dont_know_count) <= result.declared_bound;
    return result;
}

}  // namespace fairband
