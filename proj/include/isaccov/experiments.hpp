#pragma once

// Experiment layer: the flat key=value configuration with network defaults,
// one-axis parameter sweeps with CSV emission, and the named presets that
// reproduce the reference figure layouts.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "isaccov/analytic.hpp"
#include "isaccov/channel.hpp"
#include "isaccov/montecarlo.hpp"

namespace isaccov {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Full parameter record in user-facing units (dB at the boundary, linear
// internally). Default values are the baseline network setting.
struct Config {
    double k_l_db = -75.0;
    double k_n_db = -90.0;
    double k_r_db = -86.0;
    double alpha_l = 2.0;
    double alpha_n = 3.2;
    double alpha_r = 4.0;
    double mu_n_comm = 1.0;
    double mu_n_sens = 1.0;
    double rician_k = 10.0;
    double lambda_bs = 1e-5;        // m^-2
    double tx_power_dbm = 43.0;
    double noise_psd_dbm_hz = -174.0;
    double bandwidth_hz = 1e8;
    double rcs_dbsm = 20.0;         // 100 m^2
    double beta = 0.008;            // m^-1
    double p = 0.1;
    double threshold_comm_db = 0.0;
    double threshold_sens_db = 0.0;
    std::uint64_t n_snapshots = 10000;
    double area_radius_m = 1000.0;
    std::uint64_t seed = 1;

    void validate() const {
        if (!(lambda_bs > 0.0))
            throw ConfigError("config: lambda_bs must be > 0");
        if (!(beta >= 0.0))
            throw ConfigError("config: beta must be >= 0");
        if (!(p >= 0.0))
            throw ConfigError("config: p must be >= 0");
        if (!(alpha_l >= 2.0))
            throw ConfigError("config: alpha_l must be >= 2");
        if (!(alpha_n > 2.0))
            throw ConfigError("config: alpha_n must be > 2");
        if (!(alpha_r > 2.0))
            throw ConfigError("config: alpha_r must be > 2");
        if (!(mu_n_comm > 0.0) || !(mu_n_sens > 0.0))
            throw ConfigError("config: Rayleigh rates must be > 0");
        if (!(rician_k >= 0.0))
            throw ConfigError("config: rician_k must be >= 0");
        if (!(bandwidth_hz > 0.0))
            throw ConfigError("config: bandwidth_hz must be > 0");
        if (n_snapshots < 1)
            throw ConfigError("config: n_snapshots must be >= 1");
        if (!(area_radius_m > 0.0))
            throw ConfigError("config: area_radius_m must be > 0");
    }

    // Noise power normalised by the transmit power; the coverage formulas use
    // a unit transmit signal, so dividing the noise by P_t is the equivalent
    // SINR convention.
    double scaled_noise() const {
        const double noise_dbm = noise_psd_dbm_hz + 10.0 * std::log10(bandwidth_hz);
        return std::pow(10.0, (noise_dbm - tx_power_dbm) / 10.0);
    }

    double mean_rcs_m2() const { return std::pow(10.0, rcs_dbsm / 10.0); }

    PathLossParams path_loss() const {
        return PathLossParams::from_db(k_l_db, k_n_db, k_r_db, alpha_l, alpha_n, alpha_r);
    }

    BlockageParams blockage() const { return {beta, p}; }

    // Fading with the tabulated series when K has one; simulation-only
    // parameters otherwise (the analytic path then rejects them).
    FadingParams fading() const {
        if (rician_series_lookup(rician_k) != nullptr)
            return fading_from_table(rician_k, mu_n_comm, mu_n_sens, mean_rcs_m2());
        return fading_simulation_only(rician_k, mu_n_comm, mu_n_sens, mean_rcs_m2());
    }

    NetworkParams network() const {
        NetworkParams net;
        net.lambda_bs = lambda_bs;
        net.noise_comm = scaled_noise();
        net.noise_sens = scaled_noise();
        net.threshold_comm = std::pow(10.0, threshold_comm_db / 10.0);
        net.threshold_sens = std::pow(10.0, threshold_sens_db / 10.0);
        return net;
    }

    Scenario scenario() const {
        Scenario sc;
        sc.area_radius = area_radius_m;
        sc.lambda_bs = lambda_bs;
        sc.blockage_mode = BlockageMode::bernoulli;
        sc.bernoulli = blockage();
        sc.seed = seed;
        return sc;
    }
};

inline Config default_config() { return {}; }

namespace detail {

inline std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos)
        return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

inline double parse_double(const std::string& text, int line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size())
            throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config line " + std::to_string(line) + ": cannot parse number '" +
                          text + "'");
    }
}

inline std::uint64_t parse_u64(const std::string& text, int line) {
    const double v = parse_double(text, line);
    if (v < 0.0 || v != std::floor(v))
        throw ConfigError("config line " + std::to_string(line) +
                          ": expected a nonnegative integer, got '" + text + "'");
    return static_cast<std::uint64_t>(v);
}

}  // namespace detail

// Parse the flat "key = value" format with # comments. Every key has a
// default; unknown keys are errors naming the line.
inline Config parse_config(std::istream& in) {
    Config cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        const std::string stripped = detail::trim(line);
        if (stripped.empty())
            continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected 'key = value'");
        const std::string key = detail::trim(stripped.substr(0, eq));
        const std::string value = detail::trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected 'key = value'");

        if (key == "k_l_db") cfg.k_l_db = detail::parse_double(value, line_no);
        else if (key == "k_n_db") cfg.k_n_db = detail::parse_double(value, line_no);
        else if (key == "k_r_db") cfg.k_r_db = detail::parse_double(value, line_no);
        else if (key == "alpha_l") cfg.alpha_l = detail::parse_double(value, line_no);
        else if (key == "alpha_n") cfg.alpha_n = detail::parse_double(value, line_no);
        else if (key == "alpha_r") cfg.alpha_r = detail::parse_double(value, line_no);
        else if (key == "mu_n_comm") cfg.mu_n_comm = detail::parse_double(value, line_no);
        else if (key == "mu_n_sens") cfg.mu_n_sens = detail::parse_double(value, line_no);
        else if (key == "rician_k") cfg.rician_k = detail::parse_double(value, line_no);
        else if (key == "lambda_bs") cfg.lambda_bs = detail::parse_double(value, line_no);
        else if (key == "tx_power_dbm") cfg.tx_power_dbm = detail::parse_double(value, line_no);
        else if (key == "noise_psd_dbm_hz")
            cfg.noise_psd_dbm_hz = detail::parse_double(value, line_no);
        else if (key == "bandwidth_hz") cfg.bandwidth_hz = detail::parse_double(value, line_no);
        else if (key == "rcs_dbsm") cfg.rcs_dbsm = detail::parse_double(value, line_no);
        else if (key == "beta") cfg.beta = detail::parse_double(value, line_no);
        else if (key == "p") cfg.p = detail::parse_double(value, line_no);
        else if (key == "threshold_comm_db")
            cfg.threshold_comm_db = detail::parse_double(value, line_no);
        else if (key == "threshold_sens_db")
            cfg.threshold_sens_db = detail::parse_double(value, line_no);
        else if (key == "n_snapshots") cfg.n_snapshots = detail::parse_u64(value, line_no);
        else if (key == "area_radius_m")
            cfg.area_radius_m = detail::parse_double(value, line_no);
        else if (key == "seed") cfg.seed = detail::parse_u64(value, line_no);
        else
            throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" +
                              key + "'");
    }
    cfg.validate();
    return cfg;
}

inline Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in);
}

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

enum class SweepTask { comm, sens, both };
enum class SweepAxis { threshold_db, lambda_bs, rcs_dbsm, blockage };
enum class SweepMethods { analytic, mc, both };

struct SweepSpec {
    std::string label = "custom";
    SweepTask task = SweepTask::both;
    SweepAxis vary = SweepAxis::threshold_db;
    std::vector<double> grid;
    Config fixed;
    SweepMethods methods = SweepMethods::both;

    void validate() const {
        if (grid.empty())
            throw std::invalid_argument("SweepSpec: grid must be nonempty");
        for (std::size_t i = 1; i < grid.size(); ++i)
            if (!(grid[i] > grid[i - 1]))
                throw std::invalid_argument("SweepSpec: grid must be strictly increasing");
        fixed.validate();
    }
};

struct ResultRow {
    std::string preset;
    std::string task;  // "comm" or "sens"
    double threshold_db = 0.0;
    double lambda_bs = 0.0;
    double beta = 0.0;
    double p = 0.0;
    double rcs_dbsm = 0.0;
    double alpha_l = 0.0;
    double alpha_n = 0.0;
    double alpha_r = 0.0;
    std::optional<double> analytic_value;
    std::optional<double> mc_mean;
    std::optional<double> mc_ci_low;
    std::optional<double> mc_ci_high;
    std::optional<std::uint64_t> n_snapshots;
    std::optional<std::uint64_t> seed;
    std::string error;

    bool operator==(const ResultRow&) const = default;
};

inline constexpr const char* kCsvHeader =
    "preset,task,threshold_db,lambda_bs,beta,p,rcs_dbsm,alpha_l,alpha_n,alpha_r,"
    "analytic_value,mc_mean,mc_ci_low,mc_ci_high,n_snapshots,seed,error";

namespace detail {

inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline Config config_for_grid_value(const SweepSpec& spec, double value) {
    Config cfg = spec.fixed;
    switch (spec.vary) {
        case SweepAxis::threshold_db:
            cfg.threshold_comm_db = value;
            cfg.threshold_sens_db = value;
            break;
        case SweepAxis::lambda_bs:
            cfg.lambda_bs = value;
            break;
        case SweepAxis::rcs_dbsm:
            cfg.rcs_dbsm = value;
            break;
        case SweepAxis::blockage:
            // 0 selects the practically-unblocked parameterisation; a tiny
            // positive beta keeps the visible-association density defined.
            if (value == 0.0) {
                cfg.beta = 1e-9;
                cfg.p = 1e-9;
            }
            break;
    }
    return cfg;
}

inline ResultRow base_row(const std::string& label, const std::string& task,
                          const Config& cfg) {
    ResultRow row;
    row.preset = label;
    row.task = task;
    row.threshold_db = task == "sens" ? cfg.threshold_sens_db : cfg.threshold_comm_db;
    row.lambda_bs = cfg.lambda_bs;
    row.beta = cfg.beta;
    row.p = cfg.p;
    row.rcs_dbsm = cfg.rcs_dbsm;
    row.alpha_l = cfg.alpha_l;
    row.alpha_n = cfg.alpha_n;
    row.alpha_r = cfg.alpha_r;
    return row;
}

inline std::string sanitize_error(std::string message) {
    for (char& c : message)
        if (c == ',' || c == '\n' || c == '\r')
            c = ';';
    return message;
}

}  // namespace detail

// Run one sweep. Rows appear in grid order (comm before sens when both tasks
// run). Module errors land in the row's error column instead of aborting the
// sweep. Monte Carlo threshold sweeps reuse one snapshot set across the whole
// grid.
inline std::vector<ResultRow> run_sweep(const SweepSpec& spec,
                                        const QuadratureSpec& quad = {}) {
    spec.validate();
    const bool want_analytic =
        spec.methods == SweepMethods::analytic || spec.methods == SweepMethods::both;
    const bool want_mc = spec.methods == SweepMethods::mc || spec.methods == SweepMethods::both;

    std::vector<std::string> tasks;
    if (spec.task == SweepTask::comm || spec.task == SweepTask::both)
        tasks.push_back("comm");
    if (spec.task == SweepTask::sens || spec.task == SweepTask::both)
        tasks.push_back("sens");

    // Threshold sweeps estimate all grid points from one snapshot set.
    std::vector<std::vector<Estimate>> mc_by_task(tasks.size());
    if (want_mc && spec.vary == SweepAxis::threshold_db) {
        const Config& cfg = spec.fixed;
        for (std::size_t k = 0; k < tasks.size(); ++k) {
            try {
                mc_by_task[k] = estimate_coverage(
                    tasks[k] == "comm" ? McTask::comm : McTask::sens, spec.grid,
                    cfg.scenario(), cfg.path_loss(), cfg.fading(), cfg.scaled_noise(),
                    cfg.n_snapshots);
            } catch (const std::exception&) {
                mc_by_task[k].clear();  // re-raised per row below
            }
        }
    }

    std::vector<ResultRow> rows;
    for (std::size_t g = 0; g < spec.grid.size(); ++g) {
        const Config cfg = detail::config_for_grid_value(spec, spec.grid[g]);
        for (std::size_t k = 0; k < tasks.size(); ++k) {
            const std::string& task = tasks[k];
            ResultRow row = detail::base_row(spec.label, task, cfg);
            try {
                if (want_analytic) {
                    const NetworkParams net = cfg.network();
                    const CoverageResult res =
                        task == "comm"
                            ? comm_coverage(net, cfg.path_loss(), cfg.blockage(),
                                            cfg.fading(), quad)
                            : sens_coverage(net, cfg.path_loss(), cfg.blockage(),
                                            cfg.fading(), quad);
                    row.analytic_value = res.value;
                }
                if (want_mc) {
                    Estimate est;
                    if (spec.vary == SweepAxis::threshold_db) {
                        if (mc_by_task[k].empty())
                            throw std::runtime_error("monte carlo estimation failed");
                        est = mc_by_task[k][g];
                    } else {
                        const double threshold_db = task == "comm"
                                                        ? cfg.threshold_comm_db
                                                        : cfg.threshold_sens_db;
                        est = estimate_coverage(
                            task == "comm" ? McTask::comm : McTask::sens, {threshold_db},
                            cfg.scenario(), cfg.path_loss(), cfg.fading(),
                            cfg.scaled_noise(), cfg.n_snapshots)[0];
                    }
                    row.mc_mean = est.mean;
                    row.mc_ci_low = est.ci_low;
                    row.mc_ci_high = est.ci_high;
                    row.n_snapshots = cfg.n_snapshots;
                    row.seed = cfg.seed;
                }
            } catch (const std::exception& e) {
                row.error = detail::sanitize_error(e.what());
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

inline void write_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
    out << kCsvHeader << '\n';
    for (const auto& r : rows) {
        out << r.preset << ',' << r.task << ',' << detail::format_double(r.threshold_db)
            << ',' << detail::format_double(r.lambda_bs) << ','
            << detail::format_double(r.beta) << ',' << detail::format_double(r.p) << ','
            << detail::format_double(r.rcs_dbsm) << ','
            << detail::format_double(r.alpha_l) << ',' << detail::format_double(r.alpha_n)
            << ',' << detail::format_double(r.alpha_r) << ',';
        if (r.analytic_value)
            out << detail::format_double(*r.analytic_value);
        out << ',';
        if (r.mc_mean)
            out << detail::format_double(*r.mc_mean);
        out << ',';
        if (r.mc_ci_low)
            out << detail::format_double(*r.mc_ci_low);
        out << ',';
        if (r.mc_ci_high)
            out << detail::format_double(*r.mc_ci_high);
        out << ',';
        if (r.n_snapshots)
            out << *r.n_snapshots;
        out << ',';
        if (r.seed)
            out << *r.seed;
        out << ',' << r.error << '\n';
    }
}

inline void write_csv(const std::vector<ResultRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open output file '" + path + "'");
    write_csv(rows, out);
}

inline std::string csv_string(const std::vector<ResultRow>& rows) {
    std::ostringstream out;
    write_csv(rows, out);
    return out.str();
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    fields.push_back(field);
    return fields;
}

inline std::optional<double> parse_opt_double(const std::string& s) {
    if (s.empty())
        return std::nullopt;
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw std::runtime_error("csv: cannot parse number '" + s + "'");
    return v;
}

inline std::optional<std::uint64_t> parse_opt_u64(const std::string& s) {
    if (s.empty())
        return std::nullopt;
    std::uint64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw std::runtime_error("csv: cannot parse integer '" + s + "'");
    return v;
}

}  // namespace detail

inline std::vector<ResultRow> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("csv: empty input");
    if (line != kCsvHeader)
        throw std::runtime_error("csv: unexpected header");
    std::vector<ResultRow> rows;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const auto f = detail::split_csv_line(line);
        if (f.size() != 17)
            throw std::runtime_error("csv: expected 17 fields, got " +
                                     std::to_string(f.size()));
        ResultRow r;
        r.preset = f[0];
        r.task = f[1];
        r.threshold_db = *detail::parse_opt_double(f[2]);
        r.lambda_bs = *detail::parse_opt_double(f[3]);
        r.beta = *detail::parse_opt_double(f[4]);
        r.p = *detail::parse_opt_double(f[5]);
        r.rcs_dbsm = *detail::parse_opt_double(f[6]);
        r.alpha_l = *detail::parse_opt_double(f[7]);
        r.alpha_n = *detail::parse_opt_double(f[8]);
        r.alpha_r = *detail::parse_opt_double(f[9]);
        r.analytic_value = detail::parse_opt_double(f[10]);
        r.mc_mean = detail::parse_opt_double(f[11]);
        r.mc_ci_low = detail::parse_opt_double(f[12]);
        r.mc_ci_high = detail::parse_opt_double(f[13]);
        r.n_snapshots = detail::parse_opt_u64(f[14]);
        r.seed = detail::parse_opt_u64(f[15]);
        r.error = f[16];
        rows.push_back(std::move(r));
    }
    return rows;
}

inline std::vector<ResultRow> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open csv file '" + path + "'");
    return read_csv(in);
}

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

struct Preset {
    std::string name;
    std::vector<SweepSpec> sweeps;
};

namespace detail {

inline std::vector<double> linspace_db(double lo, double hi, int n) {
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i)
        grid[i] = lo + (hi - lo) * i / (n - 1);
    return grid;
}

inline std::vector<double> logspace(double lo, double hi, int n) {
    std::vector<double> grid(n);
    const double llo = std::log10(lo), lhi = std::log10(hi);
    for (int i = 0; i < n; ++i)
        grid[i] = std::pow(10.0, llo + (lhi - llo) * i / (n - 1));
    return grid;
}

}  // namespace detail

// Named sweep bundles matching the reference figure layouts. The RCS grid of
// fig2 ({0, 10, 20, 30} dBsm) reconstructs the "one curve per 10 dB" layout
// around the 20 dBsm default.
inline Preset preset(const std::string& name) {
    Preset out;
    out.name = name;
    const Config base = default_config();
    const std::vector<double> t_grid = detail::linspace_db(-20.0, 30.0, 26);
    const std::vector<double> lambda_grid = detail::logspace(1e-7, 1e-3, 25);

    auto sweep = [&](const std::string& label, SweepTask task, SweepAxis axis,
                     std::vector<double> grid, Config cfg) {
        SweepSpec s;
        s.label = label;
        s.task = task;
        s.vary = axis;
        s.grid = std::move(grid);
        s.fixed = cfg;
        s.methods = SweepMethods::both;
        return s;
    };

    if (name == "fig2") {
        for (double rcs : {0.0, 10.0, 20.0, 30.0}) {
            Config cfg = base;
            cfg.rcs_dbsm = rcs;
            out.sweeps.push_back(sweep("fig2_rcs" + detail::format_double(rcs),
                                       SweepTask::sens, SweepAxis::threshold_db, t_grid, cfg));
        }
        out.sweeps.push_back(
            sweep("fig2_comm", SweepTask::comm, SweepAxis::threshold_db, t_grid, base));
    } else if (name == "fig3" || name == "fig4") {
        const SweepTask task = name == "fig3" ? SweepTask::comm : SweepTask::sens;
        for (double lambda : {1e-6, 1e-5, 1e-4}) {
            Config cfg = base;
            cfg.lambda_bs = lambda;
            out.sweeps.push_back(sweep(name + "_lambda" + detail::format_double(lambda), task,
                                       SweepAxis::threshold_db, t_grid, cfg));
        }
    } else if (name == "fig5") {
        for (double t_db : {-10.0, 0.0, 10.0}) {
            Config cfg = base;
            cfg.threshold_comm_db = t_db;
            cfg.threshold_sens_db = t_db;
            out.sweeps.push_back(sweep("fig5_t" + detail::format_double(t_db),
                                       SweepTask::both, SweepAxis::lambda_bs, lambda_grid,
                                       cfg));
        }
    } else if (name == "fig6" || name == "fig7") {
        const SweepTask task = name == "fig6" ? SweepTask::comm : SweepTask::sens;
        Config cfg = base;
        cfg.alpha_l = 2.4;
        cfg.alpha_n = 4.8;
        cfg.alpha_r = 4.8;
        out.sweeps.push_back(
            sweep(name + "_blockage", task, SweepAxis::lambda_bs, lambda_grid, cfg));
        Config off = cfg;
        off.beta = 1e-9;
        off.p = 1e-9;
        out.sweeps.push_back(
            sweep(name + "_no_blockage", task, SweepAxis::lambda_bs, lambda_grid, off));
    } else if (name == "validate") {
        out.sweeps.push_back(sweep("validate", SweepTask::both, SweepAxis::threshold_db,
                                   detail::linspace_db(-20.0, 30.0, 6), base));
    } else {
        throw std::invalid_argument("unknown preset '" + name + "'");
    }
    return out;
}

inline std::vector<ResultRow> run_preset(const Preset& p,
                                         std::optional<std::uint64_t> seed_override = {},
                                         const QuadratureSpec& quad = {}) {
    std::vector<ResultRow> rows;
    for (SweepSpec spec : p.sweeps) {
        if (seed_override)
            spec.fixed.seed = *seed_override;
        auto part = run_sweep(spec, quad);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    return rows;
}

// Agreement gate used by the validate preset: every row where both methods
// produced a value must satisfy |analytic - mc| <= max(CI half-width, 0.02).
struct ValidationOutcome {
    bool passed = true;
    std::string detail;
};

inline ValidationOutcome check_validation(const std::vector<ResultRow>& rows) {
    ValidationOutcome out;
    for (const auto& r : rows) {
        if (!r.error.empty()) {
            out.passed = false;
            out.detail += r.task + " @ " + detail::format_double(r.threshold_db) +
                          " dB: error " + r.error + "\n";
            continue;
        }
        if (!r.analytic_value || !r.mc_mean)
            continue;
        const double half = 0.5 * (*r.mc_ci_high - *r.mc_ci_low);
        const double tol = std::max(half, 0.02);
        const double diff = std::abs(*r.analytic_value - *r.mc_mean);
        if (diff > tol) {
            out.passed = false;
            out.detail += r.task + " @ " + detail::format_double(r.threshold_db) +
                          " dB: |analytic - mc| = " + detail::format_double(diff) +
                          " > " + detail::format_double(tol) + "\n";
        }
    }
    return out;
}

}  // namespace isaccov
