// Copyright (c) 2026 The truncrange authors
// SPDX-License-Identifier: Apache-2.0

#include "truncrange.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <limits>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "core/asymptotics.hpp"
#include "core/bounds.hpp"
#include "core/empirical.hpp"
#include "core/errors.hpp"
#include "core/moments.hpp"
#include "core/selftest.hpp"
#include "core/skewing.hpp"
#include "core/truncated.hpp"

using truncrange::Error;
using truncrange::Family;
using truncrange::TruncatedDistribution;

struct tr_dist {
    TruncatedDistribution d;
};

struct tr_series {
    truncrange::empirical::ReturnSeries s;
};

namespace {

thread_local std::string g_last_error;

tr_status map_code(Error::Code code) {
    switch (code) {
        case Error::Code::invalid_argument: return TR_ERR_INVALID_ARGUMENT;
        case Error::Code::domain: return TR_ERR_DOMAIN;
        case Error::Code::convergence: return TR_ERR_CONVERGENCE;
        case Error::Code::parse: return TR_ERR_PARSE;
        case Error::Code::io: return TR_ERR_IO;
        case Error::Code::internal: return TR_ERR_INTERNAL;
    }
    return TR_ERR_INTERNAL;
}

template <class Fn>
tr_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return TR_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return map_code(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return TR_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return TR_ERR_INTERNAL;
    }
}

tr_status invalid(const char* what) {
    g_last_error = what;
    return TR_ERR_INVALID_ARGUMENT;
}

Family to_family(tr_family f) {
    switch (f) {
        case TR_FAMILY_NORMAL: return Family::normal;
        case TR_FAMILY_STUDENT_T2: return Family::student_t2;
        case TR_FAMILY_CAUCHY: return Family::cauchy;
        case TR_FAMILY_LAPLACE: return Family::laplace;
        case TR_FAMILY_LOGISTIC: return Family::logistic;
    }
    truncrange::throw_invalid("family enumerator out of range");
}

truncrange::HMode to_h_mode(tr_h_mode mode) {
    switch (mode) {
        case TR_H_CLOSED: return truncrange::HMode::closed;
        case TR_H_QUADRATURE: return truncrange::HMode::quadrature;
    }
    truncrange::throw_invalid("h mode enumerator out of range");
}

truncrange::asymptotics::SweepMode to_sweep_mode(tr_sweep_mode mode) {
    using SM = truncrange::asymptotics::SweepMode;
    switch (mode) {
        case TR_SWEEP_NORMALIZED_MOMENT: return SM::normalized_moment;
        case TR_SWEEP_H: return SM::h;
        case TR_SWEEP_SIGMA2_OVER_ELL: return SM::sigma2_over_ell;
        case TR_SWEEP_SIGMA2_OVER_WIDTH2: return SM::sigma2_over_width2;
    }
    truncrange::throw_invalid("sweep mode enumerator out of range");
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void fill_bound_report(const truncrange::bounds::BoundReport& r, tr_bound_report* out) {
    out->bound = r.bound;
    out->actual = r.actual;
    out->slack = r.slack;
    out->satisfied = r.satisfied ? 1 : 0;
}

void fill_limit_checks(const std::vector<truncrange::asymptotics::LimitCheck>& checks,
                       tr_limit_check* out) {
    for (std::size_t i = 0; i < checks.size(); ++i) {
        out[i] = {checks[i].parameter, checks[i].observed, checks[i].target, checks[i].abs_error};
    }
}

}  // namespace

extern "C" {

const char* tr_status_name(tr_status status) {
    switch (status) {
        case TR_OK: return "ok";
        case TR_ERR_INVALID_ARGUMENT: return "invalid argument";
        case TR_ERR_DOMAIN: return "domain error";
        case TR_ERR_CONVERGENCE: return "convergence failure";
        case TR_ERR_PARSE: return "parse error";
        case TR_ERR_IO: return "io error";
        case TR_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* tr_last_error(void) { return g_last_error.c_str(); }

const char* tr_version(void) { return "0.1.0"; }

void tr_buffer_free(void* buffer) { std::free(buffer); }

tr_status tr_family_from_name(const char* name, tr_family* out) {
    if (!name || !out) return invalid("null pointer argument");
    return guarded([&] {
        const Family f = truncrange::family_from_name(name);
        *out = static_cast<tr_family>(static_cast<int>(f));
    });
}

const char* tr_family_name(tr_family family) {
    switch (family) {
        case TR_FAMILY_NORMAL: return "normal";
        case TR_FAMILY_STUDENT_T2: return "student-t2";
        case TR_FAMILY_CAUCHY: return "cauchy";
        case TR_FAMILY_LAPLACE: return "laplace";
        case TR_FAMILY_LOGISTIC: return "logistic";
    }
    return "unknown";
}

tr_status tr_skewing_cdf(tr_family family, double x, double* out) {
    if (!out) return invalid("null pointer argument");
    return guarded([&] { *out = truncrange::skewing::cdf(to_family(family), x); });
}

tr_status tr_skewing_pdf(tr_family family, double x, double* out) {
    if (!out) return invalid("null pointer argument");
    return guarded([&] { *out = truncrange::skewing::pdf(to_family(family), x); });
}

tr_status tr_c_closed(tr_family family, double ell, double* out) {
    if (!out) return invalid("null pointer argument");
    return guarded([&] { *out = truncrange::skewing::c_closed(to_family(family), ell); });
}

tr_status tr_c_quadrature(tr_family family, double ell, double* out) {
    if (!out) return invalid("null pointer argument");
    return guarded([&] { *out = truncrange::skewing::c_quadrature(to_family(family), ell); });
}

tr_status tr_h_function(tr_family family, double ell, tr_h_mode mode, double* out) {
    if (!out) return invalid("null pointer argument");
    return guarded(
        [&] { *out = truncrange::h_function(to_family(family), ell, to_h_mode(mode)); });
}

tr_status tr_dist_new(tr_family family, double a, double b, tr_dist** out) {
    if (!out) return invalid("null pointer argument");
    *out = nullptr;
    return guarded(
        [&] { *out = new tr_dist{TruncatedDistribution::between(to_family(family), a, b)}; });
}

tr_status tr_dist_new_symmetric(tr_family family, double ell, tr_dist** out) {
    if (!out) return invalid("null pointer argument");
    *out = nullptr;
    return guarded(
        [&] { *out = new tr_dist{TruncatedDistribution::symmetric(to_family(family), ell)}; });
}

void tr_dist_free(tr_dist* dist) { delete dist; }

tr_status tr_dist_cdf(const tr_dist* dist, double x, double* out) {
    if (!dist || !out) return invalid("null pointer argument");
    return guarded([&] { *out = dist->d.cdf(x); });
}

tr_status tr_dist_pdf(const tr_dist* dist, double x, double* out) {
    if (!dist || !out) return invalid("null pointer argument");
    return guarded([&] { *out = dist->d.pdf(x); });
}

tr_status tr_dist_quantile(const tr_dist* dist, double u, double* out) {
    if (!dist || !out) return invalid("null pointer argument");
    return guarded([&] { *out = dist->d.quantile(u); });
}

tr_status tr_dist_sample(const tr_dist* dist, size_t n, uint64_t seed, double* out) {
    if (!dist || (!out && n > 0)) return invalid("null pointer argument");
    return guarded([&] {
        const auto draws = dist->d.sample(n, seed);
        if (n > 0) std::memcpy(out, draws.data(), n * sizeof(double));
    });
}

tr_status tr_dist_mean(const tr_dist* dist, double* out) {
    if (!dist || !out) return invalid("null pointer argument");
    return guarded([&] { *out = truncrange::mean(dist->d); });
}

tr_status tr_dist_variance(const tr_dist* dist, double* out) {
    if (!dist || !out) return invalid("null pointer argument");
    return guarded([&] { *out = truncrange::variance(dist->d); });
}

tr_status tr_dist_moment_about(const tr_dist* dist, double center, int order, double* out) {
    if (!dist || !out) return invalid("null pointer argument");
    return guarded([&] { *out = truncrange::moment_about(dist->d, center, order); });
}

tr_status tr_dist_normalized_moment(const tr_dist* dist, double order, double* out) {
    if (!dist || !out) return invalid("null pointer argument");
    return guarded([&] { *out = truncrange::asymptotics::normalized_moment(dist->d, order); });
}

tr_status tr_bound_upper(const tr_dist* dist, double center, int order, tr_bound_report* out) {
    if (!dist || !out) return invalid("null pointer argument");
    return guarded([&] {
        fill_bound_report(truncrange::bounds::moment_upper_bound(dist->d, center, order), out);
    });
}

tr_status tr_bound_lower_even(const tr_dist* dist, double center, int order, double t,
                              tr_bound_report* out) {
    if (!dist || !out) return invalid("null pointer argument");
    return guarded([&] {
        fill_bound_report(truncrange::bounds::lower_bound_even(dist->d, center, order, t), out);
    });
}

tr_status tr_popoviciu_bound(double a, double b, int order, double* out) {
    if (!out) return invalid("null pointer argument");
    return guarded([&] { *out = truncrange::bounds::popoviciu_generalized(a, b, order); });
}

tr_status tr_bound_gridmin(const tr_dist* dist, int order, tr_bound_report* out) {
    if (!dist || !out) return invalid("null pointer argument");
    return guarded([&] {
        fill_bound_report(truncrange::bounds::popoviciu_generalized_check(dist->d, order), out);
    });
}

tr_status tr_bound_reverse_popoviciu(const tr_dist* dist, tr_bound_report* out) {
    if (!dist || !out) return invalid("null pointer argument");
    return guarded(
        [&] { fill_bound_report(truncrange::bounds::reverse_popoviciu(dist->d), out); });
}

tr_status tr_bounds_fuzz(size_t instances, uint64_t seed,
                         tr_bounds_fuzz_row rows[TR_BOUNDS_FUZZ_KINDS], int* all_satisfied) {
    if (!rows || !all_satisfied) return invalid("null pointer argument");
    return guarded([&] {
        const auto report = truncrange::bounds::fuzz(instances, seed);
        if (report.kinds.size() != TR_BOUNDS_FUZZ_KINDS) {
            truncrange::throw_invalid("unexpected fuzz kind count");
        }
        for (std::size_t i = 0; i < report.kinds.size(); ++i) {
            const auto& k = report.kinds[i];
            std::snprintf(rows[i].kind, sizeof rows[i].kind, "%s", k.kind.c_str());
            rows[i].checked = k.checked;
            rows[i].violations = k.violations;
            rows[i].worst_slack = k.worst_slack;
        }
        *all_satisfied = report.all_satisfied ? 1 : 0;
    });
}

tr_status tr_limit_sweep_small(tr_family family, tr_sweep_mode mode, double order,
                               const double* ells, size_t n_ells, int jobs, tr_limit_check* out) {
    if (!ells || !out) return invalid("null pointer argument");
    return guarded([&] {
        const auto checks = truncrange::asymptotics::limit_sweep_small(
            to_family(family), to_sweep_mode(mode), order, {ells, n_ells}, jobs);
        fill_limit_checks(checks, out);
    });
}

tr_status tr_limit_sweep_large(tr_family family, tr_sweep_mode mode, double order,
                               const double* ells, size_t n_ells, int jobs, tr_limit_check* out) {
    if (!ells || !out) return invalid("null pointer argument");
    return guarded([&] {
        const auto checks = truncrange::asymptotics::limit_sweep_large(
            to_family(family), to_sweep_mode(mode), order, {ells, n_ells}, jobs);
        fill_limit_checks(checks, out);
    });
}

tr_status tr_sweep_to_csv(const tr_limit_check* checks, size_t n, char** out) {
    if (!checks || !out) return invalid("null pointer argument");
    return guarded([&] {
        std::vector<truncrange::asymptotics::LimitCheck> native(n);
        for (std::size_t i = 0; i < n; ++i) {
            native[i] = {checks[i].parameter, checks[i].observed, checks[i].target,
                         checks[i].abs_error};
        }
        std::ostringstream buf;
        truncrange::asymptotics::write_sweep_csv(buf, native);
        *out = dup_string(buf.str());
    });
}

tr_status tr_hcurve(tr_family family, double ell_min, double ell_max, size_t points,
                    tr_h_mode mode, int jobs, tr_hcurve_point* out) {
    if (!out) return invalid("null pointer argument");
    return guarded([&] {
        const auto curve = truncrange::asymptotics::h_curve(to_family(family), ell_min, ell_max,
                                                            points, to_h_mode(mode), jobs);
        for (std::size_t i = 0; i < curve.size(); ++i) {
            out[i] = {curve[i].ell, curve[i].h, curve[i].sigma_over_ell};
        }
    });
}

tr_status tr_hcurve_to_csv(const tr_hcurve_point* points, size_t n, char** out) {
    if (!points || !out) return invalid("null pointer argument");
    return guarded([&] {
        std::vector<truncrange::asymptotics::HCurvePoint> native(n);
        for (std::size_t i = 0; i < n; ++i) {
            native[i] = {points[i].ell, points[i].h, points[i].sigma_over_ell};
        }
        std::ostringstream buf;
        truncrange::asymptotics::write_h_curve_csv(buf, native);
        *out = dup_string(buf.str());
    });
}

tr_status tr_series_read_csv(const char* path, tr_csv_schema schema, tr_series** out) {
    if (!path || !out) return invalid("null pointer argument");
    *out = nullptr;
    return guarded([&] {
        const auto native_schema = schema == TR_SCHEMA_RETURNS
                                       ? truncrange::empirical::CsvSchema::returns
                                       : truncrange::empirical::CsvSchema::prices;
        if (std::string(path) == "-") {
            *out = new tr_series{truncrange::empirical::ingest_returns(std::cin, native_schema)};
            return;
        }
        std::ifstream in(path);
        if (!in) truncrange::throw_io(std::string("cannot open ") + path);
        *out = new tr_series{truncrange::empirical::ingest_returns(in, native_schema)};
    });
}

tr_status tr_series_synthesize(tr_family family, double ell, size_t days, size_t per_day,
                               uint64_t seed, tr_series** out) {
    if (!out) return invalid("null pointer argument");
    *out = nullptr;
    return guarded([&] {
        *out = new tr_series{
            truncrange::empirical::synthesize_series(to_family(family), ell, days, per_day, seed)};
    });
}

void tr_series_free(tr_series* series) { delete series; }

tr_status tr_series_size(const tr_series* series, size_t* n_records, size_t* n_days) {
    if (!series || !n_records || !n_days) return invalid("null pointer argument");
    *n_records = series->s.total_count();
    *n_days = series->s.days.size();
    g_last_error.clear();
    return TR_OK;
}

tr_status tr_series_to_csv(const tr_series* series, char** out) {
    if (!series || !out) return invalid("null pointer argument");
    return guarded([&] {
        std::ostringstream buf;
        truncrange::empirical::write_series_csv(buf, series->s);
        *out = dup_string(buf.str());
    });
}

tr_status tr_series_daily_stats(const tr_series* series, tr_daily_stat* out, size_t* n_out) {
    if (!series || !out || !n_out) return invalid("null pointer argument");
    return guarded([&] {
        const auto stats = truncrange::empirical::daily_stats(series->s);
        for (std::size_t i = 0; i < stats.size(); ++i) {
            std::snprintf(out[i].day, sizeof out[i].day, "%s", stats[i].day.c_str());
            out[i].count = stats[i].count;
            out[i].sample_std = stats[i].sample_std;
            out[i].population_std = stats[i].population_std;
            out[i].max_abs = stats[i].max_abs;
            out[i].ratio = stats[i].ratio;
            out[i].skipped = stats[i].skipped ? 1 : 0;
        }
        *n_out = stats.size();
    });
}

tr_status tr_daily_stats_to_csv(const tr_daily_stat* stats, size_t n, char** out) {
    if (!stats || !out) return invalid("null pointer argument");
    return guarded([&] {
        std::vector<truncrange::empirical::DailyStat> native(n);
        for (std::size_t i = 0; i < n; ++i) {
            native[i].day = stats[i].day;
            native[i].count = stats[i].count;
            native[i].sample_std = stats[i].sample_std;
            native[i].population_std = stats[i].population_std;
            native[i].max_abs = stats[i].max_abs;
            native[i].ratio = stats[i].ratio;
            native[i].skipped = stats[i].skipped != 0;
        }
        std::ostringstream buf;
        truncrange::empirical::write_daily_csv(buf, native);
        *out = dup_string(buf.str());
    });
}

tr_status tr_series_truncation_curve(const tr_series* series, size_t grid_size, int jobs,
                                     tr_curve_point* out) {
    if (!series || !out) return invalid("null pointer argument");
    return guarded([&] {
        const auto curve = truncrange::empirical::truncation_curve(series->s, grid_size, jobs);
        for (std::size_t i = 0; i < curve.size(); ++i) {
            out[i] = {curve[i].ell, curve[i].n_kept, curve[i].sigma, curve[i].ratio};
        }
    });
}

tr_status tr_curve_to_csv(const tr_curve_point* points, size_t n, char** out) {
    if (!points || !out) return invalid("null pointer argument");
    return guarded([&] {
        std::vector<truncrange::empirical::CurvePoint> native(n);
        for (std::size_t i = 0; i < n; ++i) {
            native[i] = {points[i].ell, static_cast<std::size_t>(points[i].n_kept),
                         points[i].sigma, points[i].ratio};
        }
        std::ostringstream buf;
        truncrange::empirical::write_curve_csv(buf, native);
        *out = dup_string(buf.str());
    });
}

tr_status tr_curve_read_csv(const char* path, tr_curve_point** out, size_t* n_out) {
    if (!path || !out || !n_out) return invalid("null pointer argument");
    *out = nullptr;
    *n_out = 0;
    return guarded([&] {
        std::vector<truncrange::empirical::CurvePoint> curve;
        if (std::string(path) == "-") {
            curve = truncrange::empirical::read_curve_csv(std::cin);
        } else {
            std::ifstream in(path);
            if (!in) truncrange::throw_io(std::string("cannot open ") + path);
            curve = truncrange::empirical::read_curve_csv(in);
        }
        auto* block =
            static_cast<tr_curve_point*>(std::malloc(curve.size() * sizeof(tr_curve_point)));
        if (!block) throw std::bad_alloc();
        for (std::size_t i = 0; i < curve.size(); ++i) {
            block[i] = {curve[i].ell, curve[i].n_kept, curve[i].sigma, curve[i].ratio};
        }
        *out = block;
        *n_out = curve.size();
    });
}

tr_status tr_fit_power_law(const tr_curve_point* points, size_t n, double ell_min, double ell_max,
                           tr_power_law_fit* out) {
    if (!points || !out) return invalid("null pointer argument");
    return guarded([&] {
        std::vector<truncrange::empirical::CurvePoint> native(n);
        for (std::size_t i = 0; i < n; ++i) {
            native[i] = {points[i].ell, static_cast<std::size_t>(points[i].n_kept),
                         points[i].sigma, points[i].ratio};
        }
        std::optional<std::pair<double, double>> range;
        if (!std::isnan(ell_min) || !std::isnan(ell_max)) {
            const double lo = std::isnan(ell_min) ? 0.0 : ell_min;
            const double hi = std::isnan(ell_max) ? std::numeric_limits<double>::infinity()
                                                  : ell_max;
            range = {lo, hi};
        }
        const auto fit = truncrange::empirical::fit_power_law(native, range);
        out->beta = fit.beta;
        out->zeta = fit.zeta;
        out->slope = fit.slope;
        out->intercept = fit.intercept;
        out->r_squared = fit.r_squared;
        out->ell_min = fit.ell_min;
        out->ell_max = fit.ell_max;
        out->points_used = fit.points_used;
        out->degenerate = fit.degenerate ? 1 : 0;
    });
}

tr_status tr_fit_report_text(const tr_power_law_fit* fit, char** out) {
    if (!fit || !out) return invalid("null pointer argument");
    return guarded([&] {
        truncrange::empirical::PowerLawFit native;
        native.beta = fit->beta;
        native.zeta = fit->zeta;
        native.slope = fit->slope;
        native.intercept = fit->intercept;
        native.r_squared = fit->r_squared;
        native.ell_min = fit->ell_min;
        native.ell_max = fit->ell_max;
        native.points_used = fit->points_used;
        native.degenerate = fit->degenerate != 0;
        std::ostringstream buf;
        truncrange::empirical::write_fit_report(buf, native);
        *out = dup_string(buf.str());
    });
}

tr_status tr_selftest(int quick, const char* cli_path, int jobs, tr_report_fn report, void* user,
                      int* n_failed) {
    if (!n_failed) return invalid("null pointer argument");
    return guarded([&] {
        truncrange::selftest::Config config;
        config.quick = quick != 0;
        if (cli_path) config.cli_path = cli_path;
        config.jobs = jobs;
        int failures = 0;
        truncrange::selftest::run_all(config, [&](const truncrange::selftest::CheckResult& r) {
            if (!r.passed) ++failures;
            if (report) {
                report(r.id, r.name.c_str(), r.passed ? 1 : 0, r.detail.c_str(), r.seconds, user);
            }
        });
        *n_failed = failures;
    });
}

}  // extern "C"
