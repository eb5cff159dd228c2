// Experiment harness for the fair-bandit simulator.
//
//   fairband simulate   --config cfg.json [--seed N] [--jobs N] [--out DIR]
//   fairband sweep      --config cfg.json [--seed N] [--jobs N] [--out DIR]
//   fairband audit      --config cfg.json | --out DIR
//   fairband kwik-bound --config cfg.json [--seed N] [--out DIR]
//
// Exit codes: 0 success, 2 config error, 3 I/O error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fairband/experiment.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw fairband::IoError("cannot read config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct CommonFlags {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int jobs = 0;
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool config_required = true) {
    auto* cfg = cmd->add_option("--config", flags.config_path, "JSON config file");
    if (config_required) cfg->required();
    cmd->add_option("--out", flags.out_dir, "output directory (overrides config)");
    cmd->add_option("--seed", flags.seed, "master seed (overrides config)")
        ->each([&flags](const std::string&) { flags.seed_set = true; });
    cmd->add_option("--jobs", flags.jobs, "parallel trials (overrides config)");
}

fairband::ExperimentConfig load_experiment(const CommonFlags& flags) {
    fairband::ExperimentConfig config = fairband::parse_config_json(read_file(flags.config_path));
    if (!flags.out_dir.empty()) config.out_dir = flags.out_dir;
    if (flags.seed_set) config.seed = flags.seed;
    if (flags.jobs > 0) config.jobs = flags.jobs;
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fair sequential decision-making simulator"};
    app.require_subcommand(1);

    CommonFlags sim_flags, sweep_flags, audit_flags, kwik_flags;
    std::string sweep_axis;
    std::vector<double> sweep_values;

    auto* sim = app.add_subcommand("simulate", "run one experiment config");
    add_common(sim, sim_flags);

    auto* swp = app.add_subcommand("sweep", "sweep one axis of a base config");
    add_common(swp, sweep_flags);

    auto* aud = app.add_subcommand("audit", "re-audit stored traces in a directory");
    add_common(aud, audit_flags, /*config_required=*/false);

    auto* kwik = app.add_subcommand("kwik-bound", "run a learner and report its abstention count");
    add_common(kwik, kwik_flags);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) {
            fairband::ExperimentConfig config = load_experiment(sim_flags);
            fairband::run_experiment(config);
            std::cout << "wrote " << config.trials << " trial(s) to " << config.out_dir << "\n";
        } else if (swp->parsed()) {
            const std::string text = read_file(sweep_flags.config_path);
            nlohmann::json j = nlohmann::json::parse(text, nullptr, /*allow_exceptions=*/false);
            if (j.is_discarded()) throw fairband::ConfigError("invalid JSON in sweep config");
            if (!j.contains("axis") || !j.contains("values"))
                throw fairband::ConfigError("sweep config needs \"axis\" and \"values\"");
            const std::string axis = j.at("axis").get<std::string>();
            const auto values = j.at("values").get<std::vector<double>>();
            std::vector<fairband::SweepRow> rows;
            std::string out_dir = sweep_flags.out_dir;
            if (j.contains("learner")) {
                fairband::KwikBoundConfig base = fairband::parse_kwik_bound_json(text);
                if (sweep_flags.seed_set) base.seed = sweep_flags.seed;
                rows = fairband::sweep_kwik_bound(base, axis, values);
            } else {
                fairband::ExperimentConfig base = load_experiment(sweep_flags);
                rows = fairband::sweep(base, axis, values);
                if (out_dir.empty()) out_dir = base.out_dir;
            }
            std::cout << axis << "\tcum_regret\tper_round\tviol_frac\tdont_know\n";
            for (const auto& r : rows)
                std::cout << r.value << '\t' << r.mean_cumulative_regret << '\t' << r.mean_per_round_regret
                          << '\t' << r.violation_fraction << '\t' << r.mean_dont_know_rounds << "\n";
            if (!out_dir.empty()) {
                std::filesystem::create_directories(out_dir);
                fairband::write_sweep_csv(rows, axis,
                                          (std::filesystem::path(out_dir) / "sweep.csv").string());
            }
        } else if (aud->parsed()) {
            std::string dir = audit_flags.out_dir;
            if (dir.empty() && !audit_flags.config_path.empty())
                dir = fairband::parse_config_json(read_file(audit_flags.config_path)).out_dir;
            if (dir.empty()) throw fairband::ConfigError("audit needs --out or a config with \"out\"");
            const auto audits = fairband::audit_stored_traces(dir);
            nlohmann::json runs = nlohmann::json::array();
            int violated = 0;
            for (const auto& a : audits) {
                runs.push_back({{"run_id", a.run_id},
                                {"violated", a.violated},
                                {"first_violation_round", a.first_violation_round},
                                {"count", a.count}});
                if (a.violated) ++violated;
            }
            nlohmann::json out{{"violation_fraction",
                                static_cast<double>(violated) / static_cast<double>(audits.size())},
                               {"runs", runs}};
            std::cout << out.dump(2) << "\n";
        } else if (kwik->parsed()) {
            fairband::KwikBoundConfig config = fairband::parse_kwik_bound_json(read_file(kwik_flags.config_path));
            if (kwik_flags.seed_set) config.seed = kwik_flags.seed;
            const auto result = fairband::run_kwik_bound(config);
            nlohmann::json out{{"learner", config.learner},
                               {"dont_know_count", result.dont_know_count},
                               {"declared_bound", result.declared_bound},
                               {"within_bound", result.within_bound},
                               {"value_count", result.value_count},
                               {"max_value_error", result.max_value_error}};
            std::cout << out.dump(2) << "\n";
            if (!kwik_flags.out_dir.empty()) {
                std::filesystem::create_directories(kwik_flags.out_dir);
                fairband::write_text_file(
                    (std::filesystem::path(kwik_flags.out_dir) / "kwik_bound.json").string(),
                    out.dump(2) + "\n");
            }
        }
    } catch (const fairband::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const fairband::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
