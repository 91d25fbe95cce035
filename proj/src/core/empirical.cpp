// Copyright (c) 2026 The truncrange authors
// SPDX-License-Identifier: Apache-2.0

#include "empirical.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <limits>
#include <ostream>
#include <unordered_map>

#include "errors.hpp"
#include "format.hpp"
#include "parallel.hpp"
#include "stats.hpp"

namespace truncrange::empirical {

std::size_t ReturnSeries::total_count() const {
    std::size_t n = 0;
    for (const DaySlice& d : days) n += d.values.size();
    return n;
}

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
    throw_parse("line " + std::to_string(line) + ": " + what);
}

std::string strip(std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
    std::size_t start = 0;
    while (start < s.size() && (s[start] == ' ' || s[start] == '\t')) ++start;
    return s.substr(start);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = line.find(',', pos);
        if (comma == std::string::npos) {
            fields.push_back(strip(line.substr(pos)));
            break;
        }
        fields.push_back(strip(line.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return fields;
}

double parse_double(const std::string& field, std::size_t line) {
    if (field.empty()) parse_fail(line, "empty numeric field");
    char* end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (end != field.c_str() + field.size()) {
        parse_fail(line, "malformed number '" + field + "'");
    }
    return v;
}

bool all_digits(const std::string& s, std::size_t from, std::size_t to) {
    for (std::size_t i = from; i < to; ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

void validate_date(const std::string& day, std::size_t line) {
    const bool shape = day.size() == 10 && day[4] == '-' && day[7] == '-' &&
                       all_digits(day, 0, 4) && all_digits(day, 5, 7) && all_digits(day, 8, 10);
    if (!shape) parse_fail(line, "malformed ISO date '" + day + "'");
    const int month = std::stoi(day.substr(5, 2));
    const int dom = std::stoi(day.substr(8, 2));
    if (month < 1 || month > 12 || dom < 1 || dom > 31) {
        parse_fail(line, "calendar date out of range '" + day + "'");
    }
}

struct Timestamp {
    std::string date;
    double seconds = 0.0;  // seconds of day
};

Timestamp parse_timestamp(const std::string& field, std::size_t line) {
    if (field.size() < 19 || (field[10] != ' ' && field[10] != 'T')) {
        parse_fail(line, "malformed timestamp '" + field + "' (expected ISO-8601 with time)");
    }
    Timestamp ts;
    ts.date = field.substr(0, 10);
    validate_date(ts.date, line);
    const std::string clock = field.substr(11);
    if (clock.size() < 8 || clock[2] != ':' || clock[5] != ':' || !all_digits(clock, 0, 2) ||
        !all_digits(clock, 3, 5) || !all_digits(clock, 6, 8)) {
        parse_fail(line, "malformed time of day in '" + field + "'");
    }
    const int hh = std::stoi(clock.substr(0, 2));
    const int mm = std::stoi(clock.substr(3, 2));
    const int ss = std::stoi(clock.substr(6, 2));
    if (hh > 23 || mm > 59 || ss > 60) parse_fail(line, "time of day out of range in '" + field + "'");
    double frac = 0.0;
    if (clock.size() > 8) {
        if (clock[8] != '.' || clock.size() == 9 || !all_digits(clock, 9, clock.size())) {
            parse_fail(line, "malformed fractional seconds in '" + field + "'");
        }
        frac = std::strtod(clock.substr(8).c_str(), nullptr);
    }
    ts.seconds = hh * 3600.0 + mm * 60.0 + ss + frac;
    return ts;
}

void expect_header(const std::string& got, const char* want, std::size_t line) {
    if (strip(got) != want) {
        parse_fail(line, "expected header '" + std::string(want) + "', found '" + strip(got) + "'");
    }
}

// Proleptic Gregorian day arithmetic (days since 1970-01-01).
long long days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const long long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                         static_cast<unsigned>(d) - 1u;
    const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
    return era * 146097LL + static_cast<long long>(doe) - 719468LL;
}

std::string civil_from_days(long long z) {
    z += 719468LL;
    const long long era = (z >= 0 ? z : z - 146096LL) / 146097LL;
    const unsigned doe = static_cast<unsigned>(z - era * 146097LL);
    const unsigned yoe = (doe - doe / 1460u + doe / 36524u - doe / 146096u) / 365u;
    long long y = static_cast<long long>(yoe) + era * 400LL;
    const unsigned doy = doe - (365u * yoe + yoe / 4u - yoe / 100u);
    const unsigned mp = (5u * doy + 2u) / 153u;
    const unsigned d = doy - (153u * mp + 2u) / 5u + 1u;
    const unsigned m = mp < 10u ? mp + 3u : mp - 9u;
    if (m <= 2u) ++y;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%04lld-%02u-%02u", y, m, d);
    return buf;
}

ReturnSeries ingest_returns_schema(std::istream& in) {
    ReturnSeries series;
    std::unordered_map<std::string, std::size_t> day_index;
    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(in, line)) throw_parse("empty input: missing 'day,value' header");
    expect_header(line, "day,value", line_no);
    while (std::getline(in, line)) {
        ++line_no;
        if (strip(line).empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != 2) parse_fail(line_no, "expected 2 fields, found " + std::to_string(fields.size()));
        validate_date(fields[0], line_no);
        const double value = parse_double(fields[1], line_no);
        if (!std::isfinite(value)) parse_fail(line_no, "non-finite return value");
        auto [it, inserted] = day_index.try_emplace(fields[0], series.days.size());
        if (inserted) series.days.push_back({fields[0], {}});
        series.days[it->second].values.push_back(value);
    }
    if (series.days.empty()) throw_parse("empty input: no data rows");
    return series;
}

ReturnSeries ingest_prices_schema(std::istream& in) {
    ReturnSeries series;
    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(in, line)) throw_parse("empty input: missing 'timestamp,price' header");
    expect_header(line, "timestamp,price", line_no);

    bool have_prev = false;
    Timestamp prev_ts;
    double prev_price = 0.0;
    while (std::getline(in, line)) {
        ++line_no;
        if (strip(line).empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != 2) parse_fail(line_no, "expected 2 fields, found " + std::to_string(fields.size()));
        const Timestamp ts = parse_timestamp(fields[0], line_no);
        const double price = parse_double(fields[1], line_no);
        if (!(price > 0.0) || !std::isfinite(price)) parse_fail(line_no, "price must be a positive finite number");

        if (have_prev) {
            if (ts.date == prev_ts.date) {
                if (ts.seconds < prev_ts.seconds) {
                    parse_fail(line_no, "timestamps within day " + ts.date + " are not in order");
                }
                if (series.days.empty() || series.days.back().day != ts.date) {
                    series.days.push_back({ts.date, {}});
                }
                series.days.back().values.push_back(std::log(price / prev_price));
            } else if (ts.date < prev_ts.date) {
                parse_fail(line_no, "days are not in chronological order");
            }
            // First price of a new day starts a fresh baseline: no
            // cross-day return is formed.
        }
        prev_ts = ts;
        prev_price = price;
        have_prev = true;
    }
    if (!have_prev) throw_parse("empty input: no data rows");
    if (series.days.empty()) {
        throw_parse("input contains no within-day price pairs, so no returns can be formed");
    }
    return series;
}

}  // namespace

ReturnSeries ingest_returns(std::istream& in, CsvSchema schema) {
    return schema == CsvSchema::returns ? ingest_returns_schema(in) : ingest_prices_schema(in);
}

std::vector<DailyStat> daily_stats(const ReturnSeries& series) {
    std::vector<DailyStat> out;
    out.reserve(series.days.size());
    for (const DaySlice& slice : series.days) {
        DailyStat stat;
        stat.day = slice.day;
        stat.count = slice.values.size();
        if (stat.count < 2) {
            stat.skipped = true;
            stat.note = "fewer than two observations";
            out.push_back(std::move(stat));
            continue;
        }
        double max_abs = 0.0;
        for (double v : slice.values) max_abs = std::max(max_abs, std::fabs(v));
        stat.max_abs = max_abs;
        stat.sample_std = stats::sample_std(slice.values);
        stat.population_std = stats::population_std(slice.values);
        if (max_abs == 0.0) {
            stat.skipped = true;
            stat.note = "all returns zero";
        } else {
            stat.ratio = stat.sample_std / max_abs;
        }
        out.push_back(std::move(stat));
    }
    return out;
}

std::vector<CurvePoint> truncation_curve(const ReturnSeries& series, std::size_t grid_size,
                                         int jobs) {
    if (grid_size < 1) throw_invalid("truncation_curve: grid_size must be at least 1");
    std::vector<double> values;
    values.reserve(series.total_count());
    for (const DaySlice& d : series.days) {
        values.insert(values.end(), d.values.begin(), d.values.end());
    }
    if (values.size() < 2) throw_invalid("truncation_curve: need at least two observations");

    std::sort(values.begin(), values.end(),
              [](double a, double b) { return std::fabs(a) < std::fabs(b); });
    const double ell_star = std::fabs(values.back());
    if (ell_star == 0.0) throw_invalid("truncation_curve: series is identically zero");

    const std::size_t n = values.size();
    std::vector<double> abs_sorted(n), prefix_sum(n + 1, 0.0), prefix_sumsq(n + 1, 0.0);
    stats::CompensatedSum sum, sumsq;
    for (std::size_t i = 0; i < n; ++i) {
        abs_sorted[i] = std::fabs(values[i]);
        sum.add(values[i]);
        sumsq.add(values[i] * values[i]);
        prefix_sum[i + 1] = sum.value();
        prefix_sumsq[i + 1] = sumsq.value();
    }

    std::vector<CurvePoint> curve(grid_size);
    parallel_for(grid_size, jobs, [&](std::size_t idx) {
        const std::size_t m = idx + 1;
        const double ell = ell_star * (static_cast<double>(m) / static_cast<double>(grid_size));
        const std::size_t kept =
            std::upper_bound(abs_sorted.begin(), abs_sorted.end(), ell) - abs_sorted.begin();
        CurvePoint& pt = curve[idx];
        pt.ell = ell;
        pt.n_kept = kept;
        if (kept < 2) {
            pt.sigma = std::numeric_limits<double>::quiet_NaN();
            pt.ratio = std::numeric_limits<double>::quiet_NaN();
            return;
        }
        if (m == grid_size) {
            // Final point covers the whole sample: use the canonical
            // two-pass formula so it reproduces the global std exactly.
            pt.sigma = stats::sample_std(values);
        } else {
            const double nk = static_cast<double>(kept);
            const double s1 = prefix_sum[kept];
            const double s2 = prefix_sumsq[kept];
            const double var = std::max(0.0, (s2 - s1 * s1 / nk) / (nk - 1.0));
            pt.sigma = std::sqrt(var);
        }
        pt.ratio = pt.sigma / ell;
    });
    return curve;
}

PowerLawFit fit_power_law(std::span<const CurvePoint> curve,
                          std::optional<std::pair<double, double>> range) {
    std::vector<CurvePoint> usable;
    usable.reserve(curve.size());
    for (const CurvePoint& pt : curve) {
        if (std::isfinite(pt.sigma) && pt.sigma > 0.0 && std::isfinite(pt.ell) && pt.ell > 0.0) {
            usable.push_back(pt);
        }
    }
    if (usable.size() < 3) throw_invalid("fit_power_law: fewer than 3 usable points");
    std::sort(usable.begin(), usable.end(), [](const CurvePoint& a, const CurvePoint& b) {
        return a.ell != b.ell ? a.ell < b.ell : a.sigma < b.sigma;
    });

    double lo;
    double hi;
    bool exclusive_hi = false;  // decade windows are half-open
    if (range) {
        lo = range->first;
        hi = range->second;
        if (!(lo <= hi)) throw_invalid("fit_power_law: ell_min exceeds ell_max");
    } else {
        // Default window: the lowest power-of-ten decade [10^k, 10^{k+1})
        // holding at least 10 usable points; the power law is a small-ell
        // statement, so the fit anchors at the bottom of the data.
        lo = usable.front().ell;
        hi = usable.back().ell;
        int k = static_cast<int>(std::floor(std::log10(usable.front().ell)));
        const int k_top = static_cast<int>(std::floor(std::log10(usable.back().ell)));
        bool found = false;
        for (; k <= k_top; ++k) {
            const double decade_lo = std::pow(10.0, k);
            const double decade_hi = std::pow(10.0, k + 1);
            std::size_t count = 0;
            for (const CurvePoint& pt : usable) {
                if (pt.ell >= decade_lo && pt.ell < decade_hi) ++count;
            }
            if (count >= 10) {
                lo = decade_lo;
                hi = decade_hi;
                exclusive_hi = true;
                found = true;
                break;
            }
        }
        (void)found;  // no qualifying decade: fall back to the full range
    }

    std::vector<double> xs, ys;
    for (const CurvePoint& pt : usable) {
        if (pt.ell < lo || pt.ell > hi || (exclusive_hi && pt.ell == hi)) continue;
        xs.push_back(std::log(pt.ell));
        ys.push_back(std::log(pt.sigma / pt.ell));
    }
    if (xs.size() < 3) throw_invalid("fit_power_law: fewer than 3 usable points inside the range");

    const std::size_t n = xs.size();
    const double x_bar = stats::mean(xs);
    const double y_bar = stats::mean(ys);
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - x_bar) * (xs[i] - x_bar);
        sxy += (xs[i] - x_bar) * (ys[i] - y_bar);
    }
    if (!(sxx > 0.0)) throw_invalid("fit_power_law: ell values are all identical");

    PowerLawFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = y_bar - fit.slope * x_bar;
    double ss_res = 0.0;
    double ss_tot = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double resid = ys[i] - (fit.intercept + fit.slope * xs[i]);
        ss_res += resid * resid;
        ss_tot += (ys[i] - y_bar) * (ys[i] - y_bar);
    }
    if (ss_tot > 0.0) {
        fit.r_squared = std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0);
    } else {
        fit.r_squared = ss_res <= 1e-28 ? 1.0 : 0.0;
    }
    fit.points_used = n;
    fit.ell_min = std::exp(xs.front());
    fit.ell_max = std::exp(xs.back());
    if (fit.slope <= -1.0) {
        fit.degenerate = true;
        fit.beta = std::numeric_limits<double>::quiet_NaN();
        fit.zeta = std::numeric_limits<double>::quiet_NaN();
    } else {
        fit.beta = 1.0 / (1.0 + fit.slope);
        fit.zeta = std::exp(fit.intercept * fit.beta);
    }
    return fit;
}

ReturnSeries synthesize_series(Family f, double ell, std::size_t days, std::size_t per_day,
                               std::uint64_t seed) {
    if (days < 1 || per_day < 1) throw_invalid("synthesize_series: counts must be at least 1");
    const auto d = TruncatedDistribution::symmetric(f, ell);
    const std::vector<double> draws = d.sample(days * per_day, seed);

    ReturnSeries series;
    series.days.reserve(days);
    const long long epoch = days_from_civil(2000, 1, 3);
    for (std::size_t i = 0; i < days; ++i) {
        DaySlice slice;
        slice.day = civil_from_days(epoch + static_cast<long long>(i));
        slice.values.assign(draws.begin() + static_cast<std::ptrdiff_t>(i * per_day),
                            draws.begin() + static_cast<std::ptrdiff_t>((i + 1) * per_day));
        series.days.push_back(std::move(slice));
    }
    return series;
}

void write_series_csv(std::ostream& out, const ReturnSeries& series) {
    out << "day,value\n";
    for (const DaySlice& d : series.days) {
        for (double v : d.values) out << d.day << ',' << format_g15(v) << '\n';
    }
}

void write_daily_csv(std::ostream& out, std::span<const DailyStat> stats) {
    out << "day,count,sample_std,population_std,max_abs,ratio\n";
    for (const DailyStat& s : stats) {
        if (s.skipped) continue;
        out << s.day << ',' << s.count << ',' << format_g15(s.sample_std) << ','
            << format_g15(s.population_std) << ',' << format_g15(s.max_abs) << ','
            << format_g15(s.ratio) << '\n';
    }
}

void write_curve_csv(std::ostream& out, std::span<const CurvePoint> curve) {
    out << "ell,n_kept,sigma,ratio\n";
    for (const CurvePoint& pt : curve) {
        out << format_g15(pt.ell) << ',' << pt.n_kept << ',' << format_g15(pt.sigma) << ','
            << format_g15(pt.ratio) << '\n';
    }
}

std::vector<CurvePoint> read_curve_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(in, line)) throw_parse("empty input: missing 'ell,n_kept,sigma,ratio' header");
    expect_header(line, "ell,n_kept,sigma,ratio", line_no);
    std::vector<CurvePoint> curve;
    while (std::getline(in, line)) {
        ++line_no;
        if (strip(line).empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != 4) parse_fail(line_no, "expected 4 fields, found " + std::to_string(fields.size()));
        CurvePoint pt;
        pt.ell = parse_double(fields[0], line_no);
        const double kept = parse_double(fields[1], line_no);
        if (kept < 0.0 || kept != std::floor(kept)) parse_fail(line_no, "n_kept must be a non-negative integer");
        pt.n_kept = static_cast<std::size_t>(kept);
        pt.sigma = parse_double(fields[2], line_no);
        pt.ratio = parse_double(fields[3], line_no);
        curve.push_back(pt);
    }
    if (curve.empty()) throw_parse("empty input: no curve points");
    return curve;
}

void write_fit_report(std::ostream& out, const PowerLawFit& fit) {
    out << "beta=" << format_g15(fit.beta) << '\n'
        << "zeta=" << format_g15(fit.zeta) << '\n'
        << "slope=" << format_g15(fit.slope) << '\n'
        << "intercept=" << format_g15(fit.intercept) << '\n'
        << "r_squared=" << format_g15(fit.r_squared) << '\n'
        << "ell_min=" << format_g15(fit.ell_min) << '\n'
        << "ell_max=" << format_g15(fit.ell_max) << '\n'
        << "points_used=" << fit.points_used << '\n';
}

}  // namespace truncrange::empirical
