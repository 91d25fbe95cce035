// Copyright (c) 2026 The truncrange authors
// SPDX-License-Identifier: Apache-2.0

#include "moments.hpp"

#include <cmath>
#include <vector>

#include "errors.hpp"

namespace truncrange {

double ipow(double base, int exponent) {
    if (exponent < 0) throw_invalid("ipow: negative exponent");
    double result = 1.0;
    double factor = base;
    for (int e = exponent; e > 0; e >>= 1) {
        if (e & 1) result *= factor;
        factor *= factor;
    }
    return result;
}

namespace {

bool is_integer(double p) { return p == std::floor(p); }

}  // namespace

double i_g(Family f, double c, double s, double t, double p, quad::Options opt) {
    if (s == t) return 0.0;
    if (!(s < t)) throw_invalid("i_g: requires s < t");
    if (!(p > 0.0)) throw_invalid("i_g: requires p > 0");

    const bool integral_order = is_integer(p);
    if (!integral_order && s < 0.0) {
        throw_domain("i_g: non-integer p with a negative integration range");
    }

    // Split at the power's singular point (y = 0) and at the Laplace kink of
    // G(y + c) at y = -c whenever they fall inside the range.
    std::vector<double> breaks;
    if (s < 0.0 && 0.0 < t) breaks.push_back(0.0);
    if (f == Family::laplace && s < -c && -c < t) breaks.push_back(-c);

    if (integral_order) {
        const int pm1 = static_cast<int>(p) - 1;
        return quad::integrate_or_throw(
            [f, c, pm1](double y) { return ipow(y, pm1) * skewing::cdf(f, y + c); }, s, t, opt,
            breaks);
    }
    const double pm1 = p - 1.0;
    return quad::integrate_or_throw(
        [f, c, pm1](double y) { return std::pow(y, pm1) * skewing::cdf(f, y + c); }, s, t, opt,
        breaks);
}

double moment_about(const TruncatedDistribution& d, double center, int order) {
    if (order < 1) throw_invalid("moment_about: order must be a positive integer");
    if (!(center > d.lower() && center < d.upper())) {
        throw_invalid("moment_about: center must lie strictly inside the support");
    }
    const double a = d.lower();
    const double b = d.upper();
    const double p = static_cast<double>(order);
    const double boundary =
        ipow(b - center, order) * d.g_upper() - ipow(a - center, order) * d.g_lower();
    const double kernel = i_g(d.family(), center, a - center, b - center, p);
    return (boundary - p * kernel) / d.mass();
}

double mean(const TruncatedDistribution& d) {
    const double mid = 0.5 * (d.lower() + d.upper());
    return moment_about(d, mid, 1) + mid;
}

double variance(const TruncatedDistribution& d) { return moment_about(d, mean(d), 2); }

double h_function(Family f, double ell, HMode mode) {
    if (!(ell > 0.0)) throw_invalid("h_function: ell must be positive");

    if (mode == HMode::closed && ell >= skewing::kSmallEllFallback) {
        const double two_c = 2.0 * skewing::c_closed(f, ell) - 1.0;
        const double two_g = 2.0 * skewing::cdf_centered(f, ell);
        return 1.0 - two_c / two_g;
    }

    // Quadrature route, also forced below the small-ell threshold: the
    // difference G - C collapses into one non-negative integrand, so the
    // 1/3 limit survives in floating point.
    const double g_centered = skewing::cdf_centered(f, ell);
    quad::Options opt;
    opt.rel_tol = 1e-11;
    const double integral = quad::integrate_or_throw(
        [f, g_centered](double y) {
            return y * (g_centered - skewing::cdf_centered(f, y));
        },
        0.0, ell, opt);
    return 2.0 * integral / (ell * ell) / g_centered;
}

double symmetric_variance(Family f, double ell, HMode mode) {
    return ell * ell * h_function(f, ell, mode);
}

}  // namespace truncrange
