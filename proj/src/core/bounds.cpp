// Copyright (c) 2026 The truncrange authors
// SPDX-License-Identifier: Apache-2.0

#include "bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "errors.hpp"
#include "moments.hpp"
#include "rng.hpp"

namespace truncrange::bounds {

namespace {

BoundReport make_upper(double bound, double actual) {
    BoundReport r;
    r.bound = bound;
    r.actual = actual;
    r.slack = bound - actual;
    r.satisfied = r.slack >= -kSlackTolerance;
    return r;
}

BoundReport make_lower(double bound, double actual) {
    BoundReport r;
    r.bound = bound;
    r.actual = actual;
    r.slack = actual - bound;
    r.satisfied = r.slack >= -kSlackTolerance;
    return r;
}

}  // namespace

BoundReport moment_upper_bound(const TruncatedDistribution& d, double center, int order) {
    if (order < 1) throw_invalid("moment_upper_bound: order must be >= 1");
    if (!(center > d.lower() && center < d.upper())) {
        throw_invalid("moment_upper_bound: center must lie strictly inside the support");
    }
    const double fc = d.cdf(center);
    const double up = ipow(d.upper() - center, order) * (1.0 - fc);
    const double bound =
        (order % 2 == 0) ? up + ipow(d.lower() - center, order) * fc : up;
    return make_upper(bound, moment_about(d, center, order));
}

BoundReport lower_bound_even(const TruncatedDistribution& d, double center, int order, double t) {
    if (order < 2 || order % 2 != 0) throw_invalid("lower_bound_even: order must be even");
    if (!(center > d.lower() && center < d.upper())) {
        throw_invalid("lower_bound_even: center must lie strictly inside the support");
    }
    if (!(t > center && t < d.upper())) {
        throw_invalid("lower_bound_even: threshold t must lie in (c, b)");
    }
    const double bound = ipow(t - center, order) * (1.0 - d.cdf(t));
    return make_lower(bound, moment_about(d, center, order));
}

double popoviciu_generalized(double a, double b, int order) {
    if (!(a < b)) throw_invalid("popoviciu_generalized: requires a < b");
    if (order < 1) throw_invalid("popoviciu_generalized: order must be >= 1");
    return order % 2 == 0 ? ipow(0.5 * (b - a), order) : 0.0;
}

BoundReport popoviciu_generalized_check(const TruncatedDistribution& d, int order,
                                        int grid_points) {
    if (grid_points < 3) throw_invalid("popoviciu_generalized_check: grid too small");
    const double a = d.lower();
    const double b = d.upper();
    const double span = b - a;

    auto value_at = [&](double c) { return moment_about(d, c, order); };

    // Uniform interior grid.
    double best = std::numeric_limits<double>::infinity();
    int best_index = 1;
    for (int i = 1; i <= grid_points; ++i) {
        const double c = a + span * static_cast<double>(i) / static_cast<double>(grid_points + 1);
        const double v = value_at(c);
        if (v < best) {
            best = v;
            best_index = i;
        }
    }

    // Golden-section refinement on the bracket around the grid argmin.  The
    // grid minimum already satisfies the bound a fortiori; refinement only
    // tightens the check.
    const double margin = 1e-9 * span;
    double lo = a + span * static_cast<double>(best_index - 1) / static_cast<double>(grid_points + 1);
    double hi = a + span * static_cast<double>(best_index + 1) / static_cast<double>(grid_points + 1);
    lo = std::max(lo, a + margin);
    hi = std::min(hi, b - margin);
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = value_at(x1);
    double f2 = value_at(x2);
    for (int iter = 0; iter < 40 && hi - lo > margin; ++iter) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvPhi * (hi - lo);
            f1 = value_at(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (hi - lo);
            f2 = value_at(x2);
        }
    }
    best = std::min({best, f1, f2});
    return make_upper(popoviciu_generalized(a, b, order), best);
}

BoundReport popoviciu_variance(const TruncatedDistribution& d) {
    const double half = 0.5 * d.width();
    return make_upper(half * half, variance(d));
}

BoundReport reverse_popoviciu(const TruncatedDistribution& d) {
    const double mu = mean(d);
    const double quarter = 0.5 * (d.upper() - mu);
    const double tail = 1.0 - d.cdf(0.5 * (mu + d.upper()));
    return make_lower(quarter * quarter * tail, variance(d));
}

namespace {

void tally(FuzzReport& report, std::size_t kind_index, const BoundReport& r) {
    FuzzKindStats& k = report.kinds[kind_index];
    ++k.checked;
    if (!r.satisfied) {
        ++k.violations;
        report.all_satisfied = false;
    }
    k.worst_slack = std::min(k.worst_slack, r.slack);
}

}  // namespace

FuzzReport fuzz(std::size_t instances, std::uint64_t seed) {
    FuzzReport report;
    report.kinds = {
        {"popoviciu", 0, 0, std::numeric_limits<double>::infinity()},
        {"upper-even", 0, 0, std::numeric_limits<double>::infinity()},
        {"upper-odd", 0, 0, std::numeric_limits<double>::infinity()},
        {"lower-even", 0, 0, std::numeric_limits<double>::infinity()},
        {"gridmin-even", 0, 0, std::numeric_limits<double>::infinity()},
        {"gridmin-odd", 0, 0, std::numeric_limits<double>::infinity()},
        {"reverse-popoviciu", 0, 0, std::numeric_limits<double>::infinity()},
    };
    report.instances = instances;

    SplitMix64 rng(seed);
    for (std::size_t i = 0; i < instances; ++i) {
        const Family f = kAllFamilies[rng.next_u64() % 5];
        const double center = rng.next_in(-3.0, 3.0);
        const double width = std::pow(10.0, rng.next_in(-3.0, 3.0));
        const auto d = TruncatedDistribution::between(f, center - 0.5 * width, center + 0.5 * width);
        const double c = d.lower() + d.width() * rng.next_in(0.02, 0.98);
        const int even_p = 2 * (1 + static_cast<int>(rng.next_u64() % 2));  // 2 or 4
        const int odd_p = 1 + 2 * static_cast<int>(rng.next_u64() % 2);     // 1 or 3
        const double t = c + (d.upper() - c) * rng.next_in(0.05, 0.95);

        tally(report, 0, popoviciu_variance(d));
        tally(report, 1, moment_upper_bound(d, c, even_p));
        tally(report, 2, moment_upper_bound(d, c, odd_p));
        tally(report, 3, lower_bound_even(d, c, even_p, t));
        tally(report, 4, popoviciu_generalized_check(d, even_p));
        tally(report, 5, popoviciu_generalized_check(d, odd_p));
        tally(report, 6, reverse_popoviciu(d));
    }
    return report;
}

}  // namespace truncrange::bounds
