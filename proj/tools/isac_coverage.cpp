// Command-line front end: single-point analytic and Monte Carlo evaluation,
// one-axis sweeps with CSV output, figure presets, and the analytic/MC
// validation gate.
//
// Exit codes: 0 success, 1 validation failure, 2 input error.

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "isaccov/experiments.hpp"

namespace {

constexpr const char* kSeedEnvVar = "ISAC_COVERAGE_SEED";

std::optional<std::uint64_t> env_seed() {
    const char* value = std::getenv(kSeedEnvVar);
    if (value == nullptr || *value == '\0')
        return std::nullopt;
    return std::strtoull(value, nullptr, 10);
}

isaccov::Config load_or_default(const std::string& path) {
    if (path.empty())
        return isaccov::default_config();
    return isaccov::load_config(path);
}

std::vector<double> parse_grid(const std::string& list) {
    std::vector<double> grid;
    std::size_t pos = 0;
    while (pos <= list.size()) {
        const std::size_t comma = list.find(',', pos);
        const std::string item =
            list.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (!item.empty())
            grid.push_back(std::stod(item));
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }
    return grid;
}

void apply_seed(isaccov::Config& cfg, const std::optional<std::uint64_t>& flag_seed) {
    if (flag_seed)
        cfg.seed = *flag_seed;
    else if (const auto from_env = env_seed())
        cfg.seed = *from_env;
}

int run_analytic(const isaccov::Config& cfg, const std::string& task) {
    const isaccov::NetworkParams net = cfg.network();
    const isaccov::QuadratureSpec spec;
    if (task == "comm" || task == "both") {
        const auto res = isaccov::comm_coverage(net, cfg.path_loss(), cfg.blockage(),
                                                cfg.fading(), spec);
        std::printf("comm %.10g\n", res.value);
    }
    if (task == "sens" || task == "both") {
        const auto res = isaccov::sens_coverage(net, cfg.path_loss(), cfg.blockage(),
                                                cfg.fading(), spec);
        std::printf("sens %.10g\n", res.value);
    }
    return 0;
}

int run_mc(const isaccov::Config& cfg, const std::string& task) {
    const auto one = [&](isaccov::McTask t, const char* name, double threshold_db) {
        const auto est = isaccov::estimate_coverage(t, {threshold_db}, cfg.scenario(),
                                                    cfg.path_loss(), cfg.fading(),
                                                    cfg.scaled_noise(), cfg.n_snapshots);
        std::printf("%s %.10g ci [%.10g, %.10g] n %llu\n", name, est[0].mean, est[0].ci_low,
                    est[0].ci_high, static_cast<unsigned long long>(est[0].n));
    };
    if (task == "comm" || task == "both")
        one(isaccov::McTask::comm, "comm", cfg.threshold_comm_db);
    if (task == "sens" || task == "both")
        one(isaccov::McTask::sens, "sens", cfg.threshold_sens_db);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ISAC network coverage probability: analytic theorems and Monte Carlo"};
    app.require_subcommand(1);

    std::string config_path, task = "both", out_path, vary = "threshold_db", grid_list,
                methods = "both", preset_name;
    std::optional<std::uint64_t> seed_flag;
    std::optional<double> threshold_db;
    std::optional<std::uint64_t> snapshots;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "key = value configuration file");
        cmd->add_option("--task", task, "comm, sens or both")
            ->check(CLI::IsMember({"comm", "sens", "both"}));
        cmd->add_option("--threshold-db", threshold_db, "override both detection thresholds");
        cmd->add_option("--seed", seed_flag, "random seed (also " + std::string(kSeedEnvVar) +
                                                 " environment variable)");
    };

    CLI::App* analytic = app.add_subcommand("analytic", "evaluate the coverage theorems");
    add_common(analytic);

    CLI::App* mc = app.add_subcommand("mc", "Monte Carlo coverage estimate");
    add_common(mc);
    mc->add_option("--snapshots", snapshots, "number of network snapshots");

    CLI::App* sweep = app.add_subcommand("sweep", "sweep one parameter and write CSV");
    add_common(sweep);
    sweep->add_option("--vary", vary, "threshold_db, lambda_bs, rcs_dbsm or blockage")
        ->check(CLI::IsMember({"threshold_db", "lambda_bs", "rcs_dbsm", "blockage"}));
    sweep->add_option("--grid", grid_list, "comma-separated grid values")->required();
    sweep->add_option("--out", out_path, "output CSV path")->required();
    sweep->add_option("--methods", methods, "analytic, mc or both")
        ->check(CLI::IsMember({"analytic", "mc", "both"}));

    CLI::App* preset_cmd = app.add_subcommand("preset", "run a named figure preset");
    preset_cmd->add_option("name", preset_name, "fig2..fig7 or validate")->required();
    preset_cmd->add_option("--out", out_path, "output CSV path")->required();
    preset_cmd->add_option("--seed", seed_flag, "random seed");

    CLI::App* validate = app.add_subcommand("validate", "run the analytic/MC agreement gate");
    validate->add_option("--out", out_path, "optional CSV path");
    validate->add_option("--seed", seed_flag, "random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (analytic->parsed() || mc->parsed()) {
            isaccov::Config cfg = load_or_default(config_path);
            apply_seed(cfg, seed_flag);
            if (threshold_db) {
                cfg.threshold_comm_db = *threshold_db;
                cfg.threshold_sens_db = *threshold_db;
            }
            if (snapshots)
                cfg.n_snapshots = *snapshots;
            cfg.validate();
            return analytic->parsed() ? run_analytic(cfg, task) : run_mc(cfg, task);
        }

        if (sweep->parsed()) {
            isaccov::SweepSpec spec;
            spec.fixed = load_or_default(config_path);
            apply_seed(spec.fixed, seed_flag);
            if (threshold_db) {
                spec.fixed.threshold_comm_db = *threshold_db;
                spec.fixed.threshold_sens_db = *threshold_db;
            }
            spec.label = "sweep";
            spec.task = task == "comm"   ? isaccov::SweepTask::comm
                        : task == "sens" ? isaccov::SweepTask::sens
                                         : isaccov::SweepTask::both;
            spec.vary = vary == "lambda_bs"  ? isaccov::SweepAxis::lambda_bs
                        : vary == "rcs_dbsm" ? isaccov::SweepAxis::rcs_dbsm
                        : vary == "blockage" ? isaccov::SweepAxis::blockage
                                             : isaccov::SweepAxis::threshold_db;
            spec.methods = methods == "analytic" ? isaccov::SweepMethods::analytic
                           : methods == "mc"     ? isaccov::SweepMethods::mc
                                                 : isaccov::SweepMethods::both;
            spec.grid = parse_grid(grid_list);
            const auto rows = isaccov::run_sweep(spec);
            isaccov::write_csv(rows, out_path);
            std::printf("wrote %zu rows to %s\n", rows.size(), out_path.c_str());
            return 0;
        }

        if (preset_cmd->parsed() || validate->parsed()) {
            const std::string name = preset_cmd->parsed() ? preset_name : "validate";
            std::optional<std::uint64_t> seed = seed_flag;
            if (!seed)
                seed = env_seed();
            const auto rows = isaccov::run_preset(isaccov::preset(name), seed);
            if (!out_path.empty()) {
                isaccov::write_csv(rows, out_path);
                std::printf("wrote %zu rows to %s\n", rows.size(), out_path.c_str());
            }
            if (name == "validate") {
                const auto outcome = isaccov::check_validation(rows);
                if (!outcome.passed) {
                    std::fprintf(stderr, "validation failed:\n%s", outcome.detail.c_str());
                    return 1;
                }
                std::printf("validation passed: analytic and Monte Carlo agree\n");
            }
            return 0;
        }
    } catch (const isaccov::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
