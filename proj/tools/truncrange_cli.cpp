// Copyright (c) 2026 The truncrange authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end for the truncrange shared library.  Every verb is a
// thin client of the C API in truncrange.h; all numeric output uses 15
// significant digits so emitted files re-parse losslessly down the pipeline.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "truncrange.h"

namespace {

enum class LogLevel { quiet = 0, info = 1, debug = 2 };

LogLevel log_level() {
    static const LogLevel level = [] {
        const char* env = std::getenv("TRUNC_RANGE_LOG");
        if (!env) return LogLevel::quiet;
        const std::string v = env;
        if (v == "debug") return LogLevel::debug;
        if (v == "info") return LogLevel::info;
        return LogLevel::quiet;
    }();
    return level;
}

void log_info(const std::string& msg) {
    if (log_level() >= LogLevel::info) std::fprintf(stderr, "truncrange: %s\n", msg.c_str());
}

void log_debug(const std::string& msg) {
    if (log_level() >= LogLevel::debug) std::fprintf(stderr, "truncrange[debug]: %s\n", msg.c_str());
}

std::string g15(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

// Exit codes: 0 success, 1 validation error, 2 numerical failure.
int exit_code_for(tr_status status) {
    switch (status) {
        case TR_OK: return 0;
        case TR_ERR_INVALID_ARGUMENT:
        case TR_ERR_DOMAIN:
        case TR_ERR_PARSE:
        case TR_ERR_IO: return 1;
        case TR_ERR_CONVERGENCE:
        case TR_ERR_INTERNAL: return 2;
    }
    return 2;
}

[[nodiscard]] int report_failure(tr_status status) {
    std::fprintf(stderr, "error (%s): %s\n", tr_status_name(status), tr_last_error());
    return exit_code_for(status);
}

// Writes `content` to --output (or stdout when unset).
int write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::fwrite(content.data(), 1, content.size(), stdout);
        return 0;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::fprintf(stderr, "error (io error): cannot open '%s' for writing\n", path.c_str());
        return 1;
    }
    out << content;
    return out ? 0 : 1;
}

struct BufferDeleter {
    void operator()(char* p) const { tr_buffer_free(p); }
};
using Buffer = std::unique_ptr<char, BufferDeleter>;

struct DistOptions {
    std::string family_name;
    double a = std::numeric_limits<double>::quiet_NaN();
    double b = std::numeric_limits<double>::quiet_NaN();
    double ell = std::numeric_limits<double>::quiet_NaN();
    bool symmetric = false;
};

void add_family_option(CLI::App* cmd, std::string& target) {
    cmd->add_option("--family", target, "family: normal, student-t2, cauchy, laplace, logistic")
        ->required();
}

void add_support_options(CLI::App* cmd, DistOptions& o) {
    add_family_option(cmd, o.family_name);
    cmd->add_option("--a", o.a, "lower support endpoint");
    cmd->add_option("--b", o.b, "upper support endpoint");
    cmd->add_option("--ell", o.ell, "semi-range of a symmetric support (-ell, ell)");
    cmd->add_flag("--symmetric", o.symmetric, "use the symmetric support (-ell, ell)");
}

// Builds a distribution handle from --a/--b or --ell [--symmetric].
int make_dist(const DistOptions& o, tr_dist** out, bool* is_symmetric) {
    tr_family family;
    tr_status s = tr_family_from_name(o.family_name.c_str(), &family);
    if (s != TR_OK) return report_failure(s);

    const bool have_ab = !std::isnan(o.a) && !std::isnan(o.b);
    const bool have_ell = !std::isnan(o.ell);
    if (have_ab == have_ell) {
        std::fprintf(stderr, "error: give either --a and --b, or --ell [--symmetric]\n");
        return 1;
    }
    if (o.symmetric && have_ab) {
        std::fprintf(stderr, "error: --symmetric applies to --ell, not to --a/--b\n");
        return 1;
    }
    if (have_ell) {
        s = tr_dist_new_symmetric(family, o.ell, out);
        if (is_symmetric) *is_symmetric = true;
    } else {
        s = tr_dist_new(family, o.a, o.b, out);
        if (is_symmetric) *is_symmetric = false;
    }
    return s == TR_OK ? 0 : report_failure(s);
}

std::vector<double> log_grid(double lo, double hi, std::size_t points, bool descending) {
    std::vector<double> grid(points);
    for (std::size_t i = 0; i < points; ++i) {
        const double frac =
            points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(points - 1);
        grid[i] = std::exp(std::log(lo) + frac * (std::log(hi) - std::log(lo)));
    }
    if (descending) std::reverse(grid.begin(), grid.end());
    return grid;
}

// --- verb implementations ---------------------------------------------------

int run_moment(const DistOptions& dist_opts, double center, int order,
               const std::string& output) {
    tr_dist* d = nullptr;
    if (int rc = make_dist(dist_opts, &d, nullptr); rc != 0) return rc;
    double value = 0.0;
    const tr_status s = tr_dist_moment_about(d, center, order, &value);
    tr_dist_free(d);
    if (s != TR_OK) return report_failure(s);
    return write_output(output, "moment=" + g15(value) + "\n");
}

int run_variance(const DistOptions& dist_opts, tr_h_mode h_mode, const std::string& output) {
    tr_dist* d = nullptr;
    bool symmetric = false;
    if (int rc = make_dist(dist_opts, &d, &symmetric); rc != 0) return rc;
    double value = 0.0;
    tr_status s = tr_dist_variance(d, &value);
    tr_dist_free(d);
    if (s != TR_OK) return report_failure(s);
    std::string text = "variance=" + g15(value) + "\n";
    if (symmetric) {
        // Second route through the ell^2 H(ell) identity.
        tr_family family;
        tr_family_from_name(dist_opts.family_name.c_str(), &family);
        double h = 0.0;
        s = tr_h_function(family, dist_opts.ell, h_mode, &h);
        if (s != TR_OK) return report_failure(s);
        text += "variance_ell2h=" + g15(dist_opts.ell * dist_opts.ell * h) + "\n";
    }
    return write_output(output, text);
}

int run_hcurve(const std::string& family_name, double ell_min, double ell_max, std::size_t points,
               tr_h_mode mode, int jobs, const std::string& output) {
    tr_family family;
    tr_status s = tr_family_from_name(family_name.c_str(), &family);
    if (s != TR_OK) return report_failure(s);
    std::vector<tr_hcurve_point> curve(points);
    log_info("hcurve: " + std::to_string(points) + " points over [" + g15(ell_min) + ", " +
             g15(ell_max) + "]");
    s = tr_hcurve(family, ell_min, ell_max, points, mode, jobs, curve.data());
    if (s != TR_OK) return report_failure(s);
    char* csv = nullptr;
    s = tr_hcurve_to_csv(curve.data(), curve.size(), &csv);
    if (s != TR_OK) return report_failure(s);
    Buffer guard(csv);
    return write_output(output, csv);
}

int run_bounds_check(std::size_t count, std::uint64_t seed, double tolerance,
                     const std::string& output) {
    tr_bounds_fuzz_row rows[TR_BOUNDS_FUZZ_KINDS];
    int all_satisfied = 0;
    log_info("bounds-check: " + std::to_string(count) + " instances, seed " + std::to_string(seed));
    const tr_status s = tr_bounds_fuzz(count, seed, rows, &all_satisfied);
    if (s != TR_OK) return report_failure(s);
    std::string text = "kind,checked,violations,worst_slack\n";
    bool ok = true;
    for (const auto& row : rows) {
        text += std::string(row.kind) + "," + std::to_string(row.checked) + "," +
                std::to_string(row.violations) + "," + g15(row.worst_slack) + "\n";
        if (row.violations > 0 || row.worst_slack < -tolerance) ok = false;
    }
    text += ok ? "result=pass\n" : "result=fail\n";
    if (int rc = write_output(output, text); rc != 0) return rc;
    return ok ? 0 : 2;
}

int run_limits(const std::string& family_name, const std::string& mode_name,
               const std::string& direction, double order, double ell_min, double ell_max,
               std::size_t points, int jobs, double tolerance, const std::string& output) {
    tr_family family;
    tr_status s = tr_family_from_name(family_name.c_str(), &family);
    if (s != TR_OK) return report_failure(s);

    tr_sweep_mode mode;
    if (mode_name == "normalized-moment") {
        mode = TR_SWEEP_NORMALIZED_MOMENT;
    } else if (mode_name == "h") {
        mode = TR_SWEEP_H;
    } else if (mode_name == "sigma2-over-ell") {
        mode = TR_SWEEP_SIGMA2_OVER_ELL;
    } else if (mode_name == "sigma2-over-width2") {
        mode = TR_SWEEP_SIGMA2_OVER_WIDTH2;
    } else {
        std::fprintf(stderr, "error: unknown --mode '%s' (expected normalized-moment, h, "
                             "sigma2-over-ell or sigma2-over-width2)\n", mode_name.c_str());
        return 1;
    }

    const bool small = direction == "small";
    if (!small && direction != "large") {
        std::fprintf(stderr, "error: --direction must be small or large\n");
        return 1;
    }

    // Small sweeps probe a decreasing grid toward 0.
    const std::vector<double> ells = log_grid(ell_min, ell_max, points, small);
    std::vector<tr_limit_check> checks(ells.size());
    log_info("limits: sweep " + direction + " over " + std::to_string(points) + " ells");
    s = small ? tr_limit_sweep_small(family, mode, order, ells.data(), ells.size(), jobs,
                                     checks.data())
              : tr_limit_sweep_large(family, mode, order, ells.data(), ells.size(), jobs,
                                     checks.data());
    if (s != TR_OK) return report_failure(s);

    char* csv = nullptr;
    s = tr_sweep_to_csv(checks.data(), checks.size(), &csv);
    if (s != TR_OK) return report_failure(s);
    Buffer guard(csv);
    if (int rc = write_output(output, csv); rc != 0) return rc;

    if (!std::isnan(tolerance) && !checks.empty() && checks.back().abs_error > tolerance) {
        std::fprintf(stderr, "limits: final abs_error %s exceeds tolerance %s\n",
                     g15(checks.back().abs_error).c_str(), g15(tolerance).c_str());
        return 2;
    }
    return 0;
}

int run_curve(const std::string& input, const std::string& schema_name, std::size_t grid,
              int jobs, const std::string& output, const std::string& daily_output) {
    tr_csv_schema schema;
    if (schema_name == "returns") {
        schema = TR_SCHEMA_RETURNS;
    } else if (schema_name == "prices") {
        schema = TR_SCHEMA_PRICES;
    } else {
        std::fprintf(stderr, "error: --schema must be returns or prices\n");
        return 1;
    }
    tr_series* series = nullptr;
    tr_status s = tr_series_read_csv(input.c_str(), schema, &series);
    if (s != TR_OK) return report_failure(s);

    size_t n_records = 0, n_days = 0;
    tr_series_size(series, &n_records, &n_days);
    log_info("curve: " + std::to_string(n_records) + " records over " + std::to_string(n_days) +
             " days, grid " + std::to_string(grid));

    std::vector<tr_curve_point> curve(grid);
    s = tr_series_truncation_curve(series, grid, jobs, curve.data());
    if (s != TR_OK) {
        tr_series_free(series);
        return report_failure(s);
    }

    int rc = 0;
    if (!daily_output.empty()) {
        std::vector<tr_daily_stat> stats(n_days);
        size_t n_stats = 0;
        s = tr_series_daily_stats(series, stats.data(), &n_stats);
        if (s == TR_OK) {
            char* daily_csv = nullptr;
            s = tr_daily_stats_to_csv(stats.data(), n_stats, &daily_csv);
            if (s == TR_OK) {
                Buffer guard(daily_csv);
                rc = write_output(daily_output, daily_csv);
            }
        }
        if (s != TR_OK) rc = report_failure(s);
    }
    tr_series_free(series);
    if (rc != 0) return rc;

    char* csv = nullptr;
    s = tr_curve_to_csv(curve.data(), curve.size(), &csv);
    if (s != TR_OK) return report_failure(s);
    Buffer guard(csv);
    return write_output(output, csv);
}

int run_fit(const std::string& input, double ell_min, double ell_max, const std::string& output) {
    tr_curve_point* points = nullptr;
    size_t n = 0;
    tr_status s = tr_curve_read_csv(input.c_str(), &points, &n);
    if (s != TR_OK) return report_failure(s);
    Buffer points_guard(reinterpret_cast<char*>(points));

    tr_power_law_fit fit;
    s = tr_fit_power_law(points, n, ell_min, ell_max, &fit);
    if (s != TR_OK) return report_failure(s);
    log_debug("fit: slope " + g15(fit.slope) + " over " + std::to_string(fit.points_used) +
              " points");

    char* text = nullptr;
    s = tr_fit_report_text(&fit, &text);
    if (s != TR_OK) return report_failure(s);
    Buffer guard(text);
    return write_output(output, text);
}

int run_synth(const std::string& family_name, double ell, std::size_t days, std::size_t per_day,
              std::uint64_t seed, const std::string& output) {
    tr_family family;
    tr_status s = tr_family_from_name(family_name.c_str(), &family);
    if (s != TR_OK) return report_failure(s);
    tr_series* series = nullptr;
    s = tr_series_synthesize(family, ell, days, per_day, seed, &series);
    if (s != TR_OK) return report_failure(s);
    char* csv = nullptr;
    s = tr_series_to_csv(series, &csv);
    tr_series_free(series);
    if (s != TR_OK) return report_failure(s);
    Buffer guard(csv);
    return write_output(output, csv);
}

extern "C" void selftest_report(int id, const char* name, int passed, const char* detail,
                                double seconds, void* user) {
    (void)user;
    std::printf("%s  c%d %-32s (%.1f s)%s%s\n", passed ? "PASS" : "FAIL", id, name, seconds,
                detail && *detail ? "  -- " : "", detail ? detail : "");
    std::fflush(stdout);
}

int run_selftest(bool quick, int jobs, const char* self_path) {
    int failed = 0;
    log_info(std::string("selftest: running full battery") + (quick ? " (quick)" : ""));
    const tr_status s = tr_selftest(quick ? 1 : 0, self_path, jobs, selftest_report, nullptr,
                                    &failed);
    if (s != TR_OK) return report_failure(s);
    std::printf("%d/9 checks passed\n", 9 - failed);
    return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"truncated distributions from skewing functions: moments, variance-range "
                 "bounds, asymptotics, and the empirical sigma/ell power law"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(tr_version()));

    // moment
    auto* moment_cmd = app.add_subcommand("moment", "E[(X-c)^p] of a truncated distribution");
    DistOptions moment_dist;
    double moment_center = 0.0;
    int moment_order = 2;
    std::string moment_output;
    add_support_options(moment_cmd, moment_dist);
    moment_cmd->add_option("--c", moment_center, "moment center (a < c < b)")->required();
    moment_cmd->add_option("--p", moment_order, "moment order (integer >= 1)")->required();
    moment_cmd->add_option("--output", moment_output, "write to file instead of stdout");

    // variance
    auto* variance_cmd = app.add_subcommand("variance", "Var(X); symmetric supports also "
                                                        "report the ell^2 H(ell) route");
    DistOptions variance_dist;
    std::string variance_mode = "closed";
    std::string variance_output;
    add_support_options(variance_cmd, variance_dist);
    variance_cmd->add_option("--mode", variance_mode, "C(ell) route: closed or quadrature")
        ->check(CLI::IsMember({"closed", "quadrature"}));
    variance_cmd->add_option("--output", variance_output, "write to file instead of stdout");

    // hcurve
    auto* hcurve_cmd = app.add_subcommand("hcurve", "CSV of (ell, H, sigma/ell) on a log grid");
    std::string hcurve_family;
    double hcurve_min = 1e-3, hcurve_max = 1e2;
    std::size_t hcurve_points = 200;
    std::string hcurve_mode = "closed";
    int hcurve_jobs = 1;
    std::string hcurve_output;
    add_family_option(hcurve_cmd, hcurve_family);
    hcurve_cmd->add_option("--ell-min", hcurve_min, "smallest ell")->required();
    hcurve_cmd->add_option("--ell-max", hcurve_max, "largest ell")->required();
    hcurve_cmd->add_option("--points", hcurve_points, "number of grid points");
    hcurve_cmd->add_option("--mode", hcurve_mode, "C(ell) route: closed or quadrature")
        ->check(CLI::IsMember({"closed", "quadrature"}));
    hcurve_cmd->add_option("--jobs", hcurve_jobs, "worker threads for the grid");
    hcurve_cmd->add_option("--output", hcurve_output, "write to file instead of stdout");

    // bounds-check
    auto* bounds_cmd = app.add_subcommand("bounds-check", "fuzz the inequality ladder and "
                                                          "print a pass/fail table");
    std::size_t bounds_count = 1000;
    std::uint64_t bounds_seed = 0;
    double bounds_tolerance = 1e-10;
    std::string bounds_output;
    bounds_cmd->add_option("--count", bounds_count, "fuzz instances");
    bounds_cmd->add_option("--seed", bounds_seed, "RNG seed (sampling verbs are explicit-seed)")
        ->required();
    bounds_cmd->add_option("--tolerance", bounds_tolerance, "slack tolerance");
    bounds_cmd->add_option("--output", bounds_output, "write to file instead of stdout");

    // limits
    auto* limits_cmd = app.add_subcommand("limits", "asymptotic sweep CSV "
                                                    "(ell, observed, target, abs_error)");
    std::string limits_family, limits_mode = "h", limits_direction = "small";
    double limits_order = 2.0;
    double limits_min = 1e-3, limits_max = 1.0;
    std::size_t limits_points = 10;
    int limits_jobs = 1;
    double limits_tolerance = std::numeric_limits<double>::quiet_NaN();
    std::string limits_output;
    add_family_option(limits_cmd, limits_family);
    limits_cmd->add_option("--mode", limits_mode,
                           "normalized-moment, h, sigma2-over-ell or sigma2-over-width2");
    limits_cmd->add_option("--direction", limits_direction, "small or large");
    limits_cmd->add_option("--p", limits_order, "order for normalized-moment mode");
    limits_cmd->add_option("--ell-min", limits_min, "smallest ell")->required();
    limits_cmd->add_option("--ell-max", limits_max, "largest ell")->required();
    limits_cmd->add_option("--points", limits_points, "number of grid points");
    limits_cmd->add_option("--jobs", limits_jobs, "worker threads for the sweep");
    limits_cmd->add_option("--tolerance", limits_tolerance,
                           "exit 2 unless the final abs_error is below this");
    limits_cmd->add_option("--output", limits_output, "write to file instead of stdout");

    // curve
    auto* curve_cmd = app.add_subcommand("curve", "empirical truncation curve from a CSV");
    std::string curve_input, curve_schema = "returns", curve_output, curve_daily_output;
    std::size_t curve_grid = 1000;
    int curve_jobs = 1;
    curve_cmd->add_option("--input", curve_input, "input CSV ('-' for stdin)")->required();
    curve_cmd->add_option("--schema", curve_schema, "returns or prices");
    curve_cmd->add_option("--grid", curve_grid, "number of truncation points");
    curve_cmd->add_option("--jobs", curve_jobs, "worker threads for the grid");
    curve_cmd->add_option("--output", curve_output, "write to file instead of stdout");
    curve_cmd->add_option("--daily-output", curve_daily_output,
                          "also write per-day stats (the scatter of daily ratios)");

    // fit
    auto* fit_cmd = app.add_subcommand("fit", "power-law fit of a truncation curve CSV");
    std::string fit_input, fit_output;
    double fit_min = std::numeric_limits<double>::quiet_NaN();
    double fit_max = std::numeric_limits<double>::quiet_NaN();
    fit_cmd->add_option("--input", fit_input, "curve CSV ('-' for stdin)")->required();
    fit_cmd->add_option("--ell-min", fit_min, "lower fit bound (default: auto decade)");
    fit_cmd->add_option("--ell-max", fit_max, "upper fit bound (default: auto decade)");
    fit_cmd->add_option("--output", fit_output, "write to file instead of stdout");

    // synth
    auto* synth_cmd = app.add_subcommand("synth", "synthetic return series (returns-schema CSV)");
    std::string synth_family, synth_output;
    double synth_ell = 1.0;
    std::size_t synth_days = 10, synth_per_day = 1000;
    std::uint64_t synth_seed = 0;
    add_family_option(synth_cmd, synth_family);
    synth_cmd->add_option("--ell", synth_ell, "semi-range of the symmetric family")->required();
    synth_cmd->add_option("--days", synth_days, "number of synthetic days");
    synth_cmd->add_option("--per-day", synth_per_day, "observations per day");
    synth_cmd->add_option("--seed", synth_seed, "RNG seed (required: sampling is explicit-seed)")
        ->required();
    synth_cmd->add_option("--output", synth_output, "write to file instead of stdout");

    // selftest
    auto* selftest_cmd = app.add_subcommand("selftest", "run the full verification battery");
    bool selftest_quick = false;
    int selftest_jobs = 2;
    selftest_cmd->add_flag("--quick", selftest_quick, "reduced counts");
    selftest_cmd->add_option("--jobs", selftest_jobs, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Exit contract: 0 success (covers --help/--version), 1 validation.
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (moment_cmd->parsed()) {
        return run_moment(moment_dist, moment_center, moment_order, moment_output);
    }
    if (variance_cmd->parsed()) {
        return run_variance(variance_dist,
                            variance_mode == "closed" ? TR_H_CLOSED : TR_H_QUADRATURE,
                            variance_output);
    }
    if (hcurve_cmd->parsed()) {
        return run_hcurve(hcurve_family, hcurve_min, hcurve_max, hcurve_points,
                          hcurve_mode == "closed" ? TR_H_CLOSED : TR_H_QUADRATURE, hcurve_jobs,
                          hcurve_output);
    }
    if (bounds_cmd->parsed()) {
        return run_bounds_check(bounds_count, bounds_seed, bounds_tolerance, bounds_output);
    }
    if (limits_cmd->parsed()) {
        return run_limits(limits_family, limits_mode, limits_direction, limits_order, limits_min,
                          limits_max, limits_points, limits_jobs, limits_tolerance, limits_output);
    }
    if (curve_cmd->parsed()) {
        return run_curve(curve_input, curve_schema, curve_grid, curve_jobs, curve_output,
                         curve_daily_output);
    }
    if (fit_cmd->parsed()) {
        return run_fit(fit_input, fit_min, fit_max, fit_output);
    }
    if (synth_cmd->parsed()) {
        return run_synth(synth_family, synth_ell, synth_days, synth_per_day, synth_seed,
                         synth_output);
    }
    if (selftest_cmd->parsed()) {
        return run_selftest(selftest_quick, selftest_jobs, argv[0]);
    }
    return 1;
}
