// Copyright (c) 2026 The truncrange authors
// SPDX-License-Identifier: Apache-2.0

#include "asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "errors.hpp"
#include "format.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "reference.hpp"

namespace truncrange::asymptotics {

double normalized_moment(const TruncatedDistribution& d, double order) {
    if (!(order > -1.0)) throw_invalid("normalized_moment: order must exceed -1");
    const double a = d.lower();
    const double width = d.width();

    // Integrate in the normalized variable z = (x-a)/(b-a); the z^p endpoint
    // singularity for p < 0 is integrable and the seeded breakpoints keep the
    // density peak visible on very wide supports.
    const std::vector<double> x_breaks = reference::density_breakpoints(d);
    std::vector<double> z_breaks;
    z_breaks.reserve(x_breaks.size());
    for (double x : x_breaks) z_breaks.push_back((x - a) / width);

    quad::Options opt;
    opt.rel_tol = 1e-10;
    opt.abs_tol = 1e-14;
    const double integral = quad::integrate_or_throw(
        [&](double z) { return std::pow(z, order) * d.pdf(a + width * z) * width; }, 0.0, 1.0,
        opt, z_breaks);
    return integral;
}

namespace {

double observe(Family f, SweepMode mode, double order, double ell) {
    switch (mode) {
        case SweepMode::normalized_moment:
            return normalized_moment(TruncatedDistribution::symmetric(f, ell), order);
        case SweepMode::h:
            return h_function(f, ell, HMode::closed);
        case SweepMode::sigma2_over_ell:
            return ell * h_function(f, ell, HMode::closed);
        case SweepMode::sigma2_over_width2:
            return 0.25 * h_function(f, ell, HMode::closed);
    }
    throw_invalid("unknown sweep mode");
}

double small_target(SweepMode mode, double order) {
    switch (mode) {
        case SweepMode::normalized_moment: return 1.0 / (order + 1.0);
        case SweepMode::h: return 1.0 / 3.0;
        case SweepMode::sigma2_over_ell: return 0.0;
        case SweepMode::sigma2_over_width2: return 1.0 / 12.0;
    }
    throw_invalid("unknown sweep mode");
}

double large_target(Family f, SweepMode mode, double order) {
    switch (mode) {
        case SweepMode::normalized_moment: return std::pow(0.5, order);
        case SweepMode::h: return 0.0;
        case SweepMode::sigma2_over_ell:
            // Heavy Cauchy tails leave a finite variance-to-range ratio; the
            // other families lose it.
            return f == Family::cauchy ? 2.0 / std::numbers::pi : 0.0;
        case SweepMode::sigma2_over_width2: return 0.0;
    }
    throw_invalid("unknown sweep mode");
}

std::vector<LimitCheck> run_sweep(Family f, SweepMode mode, double order,
                                  std::span<const double> ells, int jobs, double target) {
    std::vector<LimitCheck> checks(ells.size());
    parallel_for(ells.size(), jobs, [&](std::size_t i) {
        LimitCheck& c = checks[i];
        c.parameter = ells[i];
        c.target = target;
        c.observed = observe(f, mode, order, ells[i]);
        c.abs_error = std::fabs(c.observed - c.target);
    });
    return checks;
}

}  // namespace

std::vector<LimitCheck> limit_sweep_small(Family f, SweepMode mode, double order,
                                          std::span<const double> ells, int jobs) {
    for (double ell : ells) {
        if (!(ell > 0.0)) throw_invalid("limit_sweep_small: ells must be positive");
    }
    return run_sweep(f, mode, order, ells, jobs, small_target(mode, order));
}

std::vector<LimitCheck> limit_sweep_large(Family f, SweepMode mode, double order,
                                          std::span<const double> ells, int jobs) {
    for (double ell : ells) {
        if (!(ell > 0.0)) throw_invalid("limit_sweep_large: ells must be positive");
    }
    return run_sweep(f, mode, order, ells, jobs, large_target(f, mode, order));
}

void write_sweep_csv(std::ostream& out, std::span<const LimitCheck> checks) {
    out << "ell,observed,target,abs_error\n";
    for (const LimitCheck& c : checks) {
        out << format_g15(c.parameter) << ',' << format_g15(c.observed) << ','
            << format_g15(c.target) << ',' << format_g15(c.abs_error) << '\n';
    }
}

std::vector<HCurvePoint> h_curve(Family f, double ell_min, double ell_max, std::size_t points,
                                 HMode mode, int jobs) {
    if (!(ell_min > 0.0) || !(ell_max >= ell_min)) {
        throw_invalid("h_curve: requires 0 < ell_min <= ell_max");
    }
    if (points == 0) throw_invalid("h_curve: need at least one point");
    std::vector<HCurvePoint> curve(points);
    const double log_lo = std::log(ell_min);
    const double log_hi = std::log(ell_max);
    parallel_for(points, jobs, [&](std::size_t i) {
        const double frac =
            points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(points - 1);
        const double ell = std::exp(log_lo + frac * (log_hi - log_lo));
        const double h = h_function(f, ell, mode);
        curve[i] = {ell, h, std::sqrt(h)};
    });
    return curve;
}

void write_h_curve_csv(std::ostream& out, std::span<const HCurvePoint> points) {
    out << "ell,h,sigma_over_ell\n";
    for (const HCurvePoint& p : points) {
        out << format_g15(p.ell) << ',' << format_g15(p.h) << ',' << format_g15(p.sigma_over_ell)
            << '\n';
    }
}

}  // namespace truncrange::asymptotics
