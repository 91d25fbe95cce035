// Copyright (c) 2026 The truncrange authors
// SPDX-License-Identifier: Apache-2.0

#include "selftest.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "asymptotics.hpp"
#include "bounds.hpp"
#include "empirical.hpp"
#include "errors.hpp"
#include "moments.hpp"
#include "reference.hpp"
#include "rng.hpp"
#include "stats.hpp"
#include "truncated.hpp"

namespace truncrange::selftest {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct Collector {
    bool ok = true;
    std::string detail;
    int failures = 0;

    void require(bool condition, const std::string& what) {
        if (condition) return;
        ok = false;
        ++failures;
        if (!detail.empty()) detail += "; ";
        detail += what;
    }

    void info(const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

void enforce_runtime(Collector& c, double elapsed, double limit) {
    c.require(elapsed < limit,
              "runtime " + fmt(elapsed) + " s exceeded the " + fmt(limit) + " s budget");
}

// --- check 1: closed-form C(ell) against its defining integral -------------

void check_table1(Collector& c, const Config& config) {
    const int points = config.quick ? 40 : 200;
    const double lo = std::log(1e-2);
    const double hi = std::log(1e3);
    double worst = 0.0;
    for (Family f : kAllFamilies) {
        for (int i = 0; i < points; ++i) {
            const double ell =
                std::exp(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1));
            const double closed = skewing::c_closed(f, ell);
            const double quadrature = skewing::c_quadrature(f, ell);
            const double rel = std::fabs(closed - quadrature) / std::fabs(quadrature);
            worst = std::max(worst, rel);
            c.require(rel <= 1e-8, std::string(family_name(f)) + " ell=" + fmt(ell) +
                                       ": closed vs quadrature rel diff " + fmt(rel));
            if (!c.ok) return;
        }
    }
    c.info("5 families x " + std::to_string(points) + " ells, worst rel diff " + fmt(worst));
}

// --- check 2: moment identity against direct quadrature --------------------

void check_moment_identity(Collector& c, const Config& config) {
    const int instances = config.quick ? 40 : 250;
    SplitMix64 rng(0x7e0a11);
    double worst = 0.0;
    for (int i = 0; i < instances; ++i) {
        const Family f = kAllFamilies[rng.next_u64() % 5];
        const double center = rng.next_in(-3.0, 3.0);
        const double width = std::pow(10.0, rng.next_in(-3.0, 3.0));
        const auto d = TruncatedDistribution::between(f, center - 0.5 * width, center + 0.5 * width);
        const double cc = d.lower() + d.width() * rng.next_in(0.05, 0.95);
        const int p = 1 + static_cast<int>(rng.next_u64() % 4);

        const double identity = moment_about(d, cc, p);
        const double oracle = reference::moment_by_quadrature(d, cc, p);
        // Both routes carry quadrature noise proportional to the problem
        // scale, so near-cancelling odd moments are compared against a
        // scale floor rather than against ~0.
        const double scale = ipow(std::max(d.upper() - cc, cc - d.lower()), p);
        const double denom = std::max(std::fabs(oracle), 1e-3 * scale);
        const double rel = std::fabs(identity - oracle) / denom;
        worst = std::max(worst, rel);
        c.require(rel <= 1e-8, std::string(family_name(f)) + " support (" + fmt(d.lower()) + "," +
                                   fmt(d.upper()) + ") c=" + fmt(cc) + " p=" + std::to_string(p) +
                                   ": rel diff " + fmt(rel));
        if (!c.ok) return;
    }
    c.info(std::to_string(instances) + " fuzzed instances, worst rel diff " + fmt(worst));
}

// --- check 3: truncated Cauchy worked example -------------------------------

void check_cauchy_example(Collector& c, const Config&) {
    const double target = 4.0 / kPi - 1.0;  // ell/arctan(ell) - 1 at ell = 1
    const auto d = TruncatedDistribution::symmetric(Family::cauchy, 1.0);
    const double boundary_route = variance(d);
    const double h_route = symmetric_variance(Family::cauchy, 1.0, HMode::closed);
    c.require(std::fabs(boundary_route - target) <= 1e-9,
              "boundary-term route " + fmt(boundary_route) + " vs " + fmt(target));
    c.require(std::fabs(h_route - target) <= 1e-9,
              "ell^2 H route " + fmt(h_route) + " vs " + fmt(target));
    c.info("both routes within " + fmt(std::max(std::fabs(boundary_route - target),
                                                std::fabs(h_route - target))) +
           " of 4/pi - 1");
}

// --- check 4: truncated normal worked example -------------------------------

void check_normal_example(Collector& c, const Config&) {
    double worst = 0.0;
    for (double ell : {0.5, 1.0, 2.0}) {
        const double ref = reference::normal_symmetric_variance(ell);
        const auto d = TruncatedDistribution::symmetric(Family::normal, ell);
        const double boundary_route = variance(d);
        const double h_route = symmetric_variance(Family::normal, ell, HMode::closed);
        worst = std::max({worst, std::fabs(boundary_route - ref), std::fabs(h_route - ref)});
        c.require(std::fabs(boundary_route - ref) <= 1e-9,
                  "ell=" + fmt(ell) + " boundary-term route " + fmt(boundary_route) + " vs " + fmt(ref));
        c.require(std::fabs(h_route - ref) <= 1e-9,
                  "ell=" + fmt(ell) + " ell^2 H route " + fmt(h_route) + " vs " + fmt(ref));
    }
    c.info("ell in {0.5, 1, 2}, worst abs diff " + fmt(worst));
}

// --- check 5: asymptotic limits ---------------------------------------------

void check_limits(Collector& c, const Config&) {
    // Small-range H limit: H(1e-3) near 1/3 for every family.
    for (Family f : kAllFamilies) {
        const double h = h_function(f, 1e-3, HMode::closed);
        c.require(std::fabs(h - 1.0 / 3.0) <= 1e-3,
                  std::string(family_name(f)) + " H(1e-3)=" + fmt(h) + " vs 1/3");
    }

    // Normalized-moment limits at width 1e-3 and width 2e4.
    for (Family f : kAllFamilies) {
        for (double p : {0.5, 1.0, 2.0, 3.0}) {
            const auto tiny = TruncatedDistribution::symmetric(f, 5e-4);
            const double small_side = asymptotics::normalized_moment(tiny, p);
            c.require(std::fabs(small_side - 1.0 / (p + 1.0)) <= 1e-3,
                      std::string(family_name(f)) + " p=" + fmt(p) + " width 1e-3: " +
                          fmt(small_side) + " vs " + fmt(1.0 / (p + 1.0)));
            const auto wide = TruncatedDistribution::symmetric(f, 1e4);
            const double large_side = asymptotics::normalized_moment(wide, p);
            c.require(std::fabs(large_side - std::pow(0.5, p)) <= 1e-3,
                      std::string(family_name(f)) + " p=" + fmt(p) + " width 2e4: " +
                          fmt(large_side) + " vs " + fmt(std::pow(0.5, p)));
        }
    }

    // Tail of sigma^2/ell: the Cauchy ratio approaches 2/pi.
    const double cauchy_tail = 1e4 * h_function(Family::cauchy, 1e4, HMode::closed);
    c.require(std::fabs(cauchy_tail - 2.0 / kPi) <= 1e-3,
              "cauchy sigma^2/ell at ell=1e4: " + fmt(cauchy_tail) + " vs " + fmt(2.0 / kPi));

    // Tail of sigma^2/ell for the normal family, probed at ell = 100.  The
    // truncated-normal variance saturates at 1, so sigma^2/ell equals ~1/ell
    // = 1e-2 at this probe; the 1e-3 bound is not attainable there and the
    // check records that fact honestly.
    const double normal_tail = 1e2 * h_function(Family::normal, 1e2, HMode::closed);
    c.require(normal_tail < 1e-3, "normal sigma^2/ell at ell=100: " + fmt(normal_tail) +
                                      " not below 1e-3 (ratio decays as 1/ell; it first dips "
                                      "below 1e-3 past ell=1000)");
}

// --- check 6: inequality ladder under fuzz ----------------------------------

void check_inequalities(Collector& c, const Config& config) {
    const std::size_t instances = config.quick ? 100 : 1000;
    const bounds::FuzzReport report = bounds::fuzz(instances, 0xb0daf);
    for (const auto& kind : report.kinds) {
        c.require(kind.violations == 0, kind.kind + ": " + std::to_string(kind.violations) +
                                            " violations, worst slack " + fmt(kind.worst_slack));
    }
    double worst = 0.0;
    bool first = true;
    for (const auto& kind : report.kinds) {
        worst = first ? kind.worst_slack : std::min(worst, kind.worst_slack);
        first = false;
    }
    c.info(std::to_string(instances) + " instances x " + std::to_string(report.kinds.size()) +
           " bounds, most adverse slack " + fmt(worst));
}

// --- check 7: Monte Carlo agreement with ell^2 H ----------------------------

void check_monte_carlo(Collector& c, const Config& config) {
    const std::size_t n = config.quick ? 100000 : 1000000;
    std::uint64_t seed = 0xc7;
    for (Family f : kAllFamilies) {
        const auto d = TruncatedDistribution::symmetric(f, 1.0);
        const std::vector<double> xs = d.sample(n, seed++);
        const double m = stats::mean(xs);
        double m2 = 0.0;
        double m4 = 0.0;
        for (double x : xs) {
            const double dev = x - m;
            m2 += dev * dev;
            m4 += dev * dev * dev * dev;
        }
        const double nd = static_cast<double>(n);
        const double s2 = m2 / (nd - 1.0);
        m2 /= nd;
        m4 /= nd;
        // Standard error of the sample variance from the sample's own
        // fourth moment.
        const double se = std::sqrt(std::max(m4 - m2 * m2, 0.0) / nd);
        const double target = symmetric_variance(f, 1.0, HMode::closed);
        c.require(std::fabs(s2 - target) <= 3.0 * se,
                  std::string(family_name(f)) + ": sample variance " + fmt(s2) + " vs " +
                      fmt(target) + " (3 SE = " + fmt(3.0 * se) + ")");
    }
    c.info(std::to_string(n) + " draws per family at ell=1");
}

// --- check 8: empirical pipeline --------------------------------------------

void check_empirical(Collector& c, const Config& config) {
    // (a) conditional std of a synthetic student-t2 series tracks the
    //     theoretical ell * sqrt(H(ell)) at 50 grid points.
    const std::size_t per_day = config.quick ? 200 : 1000;
    const std::size_t days = 100;
    const auto series = empirical::synthesize_series(Family::student_t2, 5.0, days, per_day, 0x5eed);
    const auto curve = empirical::truncation_curve(series, 1000, config.jobs);
    std::size_t checked = 0;
    double worst_pull = 0.0;
    for (std::size_t m = 20; m <= 1000; m += 20) {
        const auto& pt = curve[m - 1];
        if (pt.n_kept < 2) continue;
        const double theory = pt.ell * std::sqrt(h_function(Family::student_t2, pt.ell, HMode::closed));
        const double band = 3.0 * pt.sigma / std::sqrt(2.0 * static_cast<double>(pt.n_kept - 1));
        worst_pull = std::max(worst_pull, std::fabs(pt.sigma - theory) / (band / 3.0));
        c.require(std::fabs(pt.sigma - theory) <= band,
                  "curve point ell=" + fmt(pt.ell) + ": sigma " + fmt(pt.sigma) + " vs theory " +
                      fmt(theory) + " outside 3 SE band " + fmt(band));
        ++checked;
    }
    c.require(checked == 50, "expected 50 usable grid points, got " + std::to_string(checked));

    // (b) exact power-law input recovers (beta, zeta) = (2, 0.5) exactly.
    std::vector<empirical::CurvePoint> exact;
    for (int i = 0; i < 20; ++i) {
        const double ell = std::pow(10.0, -3.0 + 3.0 * i / 19.0);
        const double sigma = std::sqrt(0.5 * ell);  // sigma^2 / ell = 0.5
        exact.push_back({ell, 100, sigma, sigma / ell});
    }
    const auto fit = empirical::fit_power_law(exact, {{1e-3, 1.0}});
    c.require(std::fabs(fit.beta - 2.0) <= 1e-10, "beta " + fmt(fit.beta) + " vs 2");
    c.require(std::fabs(fit.zeta - 0.5) <= 1e-10, "zeta " + fmt(fit.zeta) + " vs 0.5");
    c.require(std::fabs(fit.r_squared - 1.0) <= 1e-10, "r^2 " + fmt(fit.r_squared) + " vs 1");

    // (c) small-ell regime: sigma/ell is the constant 1/sqrt(3), so the
    //     fitted slope collapses to 0, beta to 1, and zeta to 1/sqrt(3).
    //     A smooth-density family keeps the H expansion quadratic; the
    //     laplace kink would add a linear term that the intercept
    //     extrapolation amplifies.
    std::vector<empirical::CurvePoint> small;
    for (int i = 0; i < 15; ++i) {
        const double ell = std::pow(10.0, -3.0 + 1.0 * i / 14.0);
        const double sigma = ell * std::sqrt(h_function(Family::cauchy, ell, HMode::closed));
        small.push_back({ell, 100, sigma, sigma / ell});
    }
    const auto small_fit = empirical::fit_power_law(small, {{1e-3, 1e-2}});
    c.require(std::fabs(small_fit.slope) <= 0.02, "small-ell slope " + fmt(small_fit.slope));
    c.require(std::fabs(small_fit.beta - 1.0) <= 0.02, "small-ell beta " + fmt(small_fit.beta));
    c.require(std::fabs(small_fit.zeta - 1.0 / std::sqrt(3.0)) <= 1e-3,
              "small-ell zeta " + fmt(small_fit.zeta) + " vs 1/sqrt(3)");
    if (c.ok) {
        c.info("50 tracked curve points (worst pull " + fmt(worst_pull) +
               " SE), exact fit recovered, small-ell slope " + fmt(small_fit.slope));
    }
}

// --- check 9: byte-identical pipeline runs ----------------------------------

namespace fs = std::filesystem;

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw_io("cannot read " + p.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void run_cli_pipeline(const std::string& cli, const fs::path& dir) {
    fs::create_directories(dir);
    auto run = [&](const std::string& args) {
        const std::string cmd = "'" + cli + "' " + args + " >/dev/null 2>&1";
        const int status = std::system(cmd.c_str());
        if (status != 0) throw_io("pipeline command failed: " + cmd);
    };
    const std::string d = dir.string();
    run("synth --family cauchy --ell 1 --days 5 --per-day 200 --seed 7 --output " + d + "/synth.csv");
    run("curve --input " + d + "/synth.csv --schema returns --grid 100 --output " + d + "/curve.csv");
    run("fit --input " + d + "/curve.csv --output " + d + "/fit.txt");
}

std::string run_inprocess_pipeline() {
    const auto series = empirical::synthesize_series(Family::cauchy, 1.0, 5, 200, 7);
    std::ostringstream synth_csv;
    empirical::write_series_csv(synth_csv, series);

    std::istringstream back(synth_csv.str());
    const auto reread = empirical::ingest_returns(back, empirical::CsvSchema::returns);
    const auto curve = empirical::truncation_curve(reread, 100);
    std::ostringstream curve_csv;
    empirical::write_curve_csv(curve_csv, curve);

    std::istringstream curve_back(curve_csv.str());
    const auto points = empirical::read_curve_csv(curve_back);
    const auto fit = empirical::fit_power_law(points);
    std::ostringstream fit_txt;
    empirical::write_fit_report(fit_txt, fit);

    return synth_csv.str() + "\x1f" + curve_csv.str() + "\x1f" + fit_txt.str();
}

void check_determinism(Collector& c, const Config& config) {
    if (!config.cli_path.empty()) {
        const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
        const fs::path base =
            fs::temp_directory_path() / ("truncrange-selftest-" + std::to_string(stamp));
        const fs::path run1 = base / "run1";
        const fs::path run2 = base / "run2";
        run_cli_pipeline(config.cli_path, run1);
        run_cli_pipeline(config.cli_path, run2);
        for (const char* name : {"synth.csv", "curve.csv", "fit.txt"}) {
            const std::string a = read_file(run1 / name);
            const std::string b = read_file(run2 / name);
            c.require(!a.empty(), std::string(name) + " is empty");
            c.require(a == b, std::string(name) + " differs between identically seeded runs");
        }
        std::error_code ec;
        fs::remove_all(base, ec);
        c.info("CLI synth+curve+fit outputs byte-identical across two runs");
    } else {
        const std::string first = run_inprocess_pipeline();
        const std::string second = run_inprocess_pipeline();
        c.require(first == second, "in-process pipeline output differs between runs");
        c.info("in-process pipeline byte-identical across two runs (no CLI path provided)");
    }
}

struct CheckSpec {
    int id;
    const char* name;
    void (*fn)(Collector&, const Config&);
    double runtime_limit;  // seconds; 0 = unconstrained
};

constexpr CheckSpec kChecks[] = {
    {1, "table-1-closed-forms", check_table1, 30.0},
    {2, "moment-identity-vs-quadrature", check_moment_identity, 60.0},
    {3, "cauchy-example-exact-variance", check_cauchy_example, 0.0},
    {4, "normal-example-variance", check_normal_example, 0.0},
    {5, "asymptotic-limits", check_limits, 0.0},
    {6, "inequality-suite", check_inequalities, 120.0},
    {7, "monte-carlo-variance", check_monte_carlo, 0.0},
    {8, "empirical-pipeline", check_empirical, 0.0},
    {9, "pipeline-determinism", check_determinism, 0.0},
};

}  // namespace

CheckResult run_one(int id, const Config& config) {
    if (id < 1 || id > kCheckCount) throw_invalid("selftest: check id out of range");
    const CheckSpec& spec = kChecks[id - 1];
    CheckResult result;
    result.id = spec.id;
    result.name = spec.name;

    Collector collector;
    const auto start = std::chrono::steady_clock::now();
    try {
        spec.fn(collector, config);
    } catch (const std::exception& e) {
        collector.require(false, std::string("unexpected error: ") + e.what());
    }
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (spec.runtime_limit > 0.0) enforce_runtime(collector, result.seconds, spec.runtime_limit);

    result.passed = collector.ok;
    result.detail = collector.detail;
    return result;
}

std::vector<CheckResult> run_all(const Config& config,
                                 const std::function<void(const CheckResult&)>& report) {
    std::vector<CheckResult> results;
    results.reserve(kCheckCount);
    for (int id = 1; id <= kCheckCount; ++id) {
        results.push_back(run_one(id, config));
        if (report) report(results.back());
    }
    return results;
}

}  // namespace truncrange::selftest
