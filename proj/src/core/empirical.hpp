// Copyright (c) 2026 The truncrange authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "truncated.hpp"

namespace truncrange::empirical {

// Tick returns grouped by calendar day.
struct DaySlice {
    std::string day;  // ISO-8601 date
    std::vector<double> values;
};

struct ReturnSeries {
    std::vector<DaySlice> days;
    std::size_t total_count() const;
};

enum class CsvSchema { returns, prices };

// Parses a CSV stream.
//   returns schema: header "day,value"; values pass through.
//   prices schema:  header "timestamp,price"; within-day log-returns
//                   ln(p_t / p_{t-1}); no return spans two days.
// Malformed rows, non-monotone timestamps within a day, and empty inputs
// raise Error(parse) with the offending line number.
ReturnSeries ingest_returns(std::istream& in, CsvSchema schema);

struct DailyStat {
    std::string day;
    std::size_t count = 0;
    double sample_std = 0.0;      // n-1 denominator
    double population_std = 0.0;  // n denominator (range-bound check)
    double max_abs = 0.0;
    double ratio = 0.0;           // sample_std / max_abs
    bool skipped = false;         // count < 2 or max_abs == 0
    std::string note;
};

std::vector<DailyStat> daily_stats(const ReturnSeries& series);

// One point of the empirical truncation curve.
struct CurvePoint {
    double ell = 0.0;
    std::size_t n_kept = 0;
    double sigma = 0.0;  // NaN when n_kept < 2
    double ratio = 0.0;  // sigma / ell
};

// For m = 1..grid_size, ell_m = m * ell_star / grid_size with
// ell_star = max |x|; sigma(ell_m) is the sample std of {x : |x| <= ell_m}.
// One sort plus prefix sums; the final grid point is recomputed with the
// canonical two-pass formula so it matches the whole-sample std exactly.
std::vector<CurvePoint> truncation_curve(const ReturnSeries& series, std::size_t grid_size = 1000,
                                         int jobs = 1);

struct PowerLawFit {
    double beta = 0.0;
    double zeta = 0.0;
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double ell_min = 0.0;
    double ell_max = 0.0;
    std::size_t points_used = 0;
    bool degenerate = false;  // slope <= -1, beta/zeta undefined (NaN)
};

// Ordinary least squares of ln(sigma/ell) on ln(ell) over curve points with
// sigma > 0 inside [range.first, range.second]; beta = 1/(1+slope) and
// zeta = exp(intercept * beta).  Without an explicit range, the fit uses the
// lowest power-of-ten decade of ell holding at least 10 usable points
// (falling back to the full usable range when no such decade exists).
// Points are re-sorted internally, so the fit is order-invariant.
PowerLawFit fit_power_law(std::span<const CurvePoint> curve,
                          std::optional<std::pair<double, double>> range = std::nullopt);

// Seeded draws from the symmetric truncated family arranged into synthetic
// consecutive days starting 2000-01-03.
ReturnSeries synthesize_series(Family f, double ell, std::size_t days, std::size_t per_day,
                               std::uint64_t seed);

// CSV / report serialization (15 significant digits throughout).
void write_series_csv(std::ostream& out, const ReturnSeries& series);
void write_daily_csv(std::ostream& out, std::span<const DailyStat> stats);
void write_curve_csv(std::ostream& out, std::span<const CurvePoint> curve);
std::vector<CurvePoint> read_curve_csv(std::istream& in);
void write_fit_report(std::ostream& out, const PowerLawFit& fit);

}  // namespace truncrange::empirical
