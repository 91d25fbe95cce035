// Copyright (c) 2026 The truncrange authors
// SPDX-License-Identifier: Apache-2.0

#include "specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "errors.hpp"

namespace truncrange::specfun {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInvSqrtPi = 0.564189583547756286948079451561;  // 1/sqrt(pi)
constexpr double kInvSqrt2 = 0.707106781186547524400844362105;   // 1/sqrt(2)
constexpr double kSqrt2OverPi = 0.797884560802865355879892119869; // sqrt(2/pi)

// erf on |x| <= 1.5 via the all-positive series
//   erf(x) = (2/sqrt(pi)) e^{-x^2} sum_k 2^k x^{2k+1} / (1*3*...*(2k+1)),
// which avoids the alternating-series cancellation of the Maclaurin form.
double erf_series(double x) {
    const double x2 = x * x;
    double term = x;
    double sum = x;
    for (int k = 0; k < 200; ++k) {
        term *= 2.0 * x2 / static_cast<double>(2 * k + 3);
        sum += term;
        if (std::fabs(term) <= std::numeric_limits<double>::epsilon() * std::fabs(sum)) break;
    }
    return 2.0 * kInvSqrtPi * std::exp(-x2) * sum;
}

// erfc on x >= 1.5 via the Laplace continued fraction
//   erfc(x) = e^{-x^2}/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))),
// evaluated with the modified Lentz algorithm.
double erfc_cf(double x) {
    const double tiny = 1e-300;
    double f = x;
    double c = f;
    double d = 0.0;
    for (int n = 1; n < 300; ++n) {
        const double a = 0.5 * static_cast<double>(n);
        d = x + a * d;
        if (d == 0.0) d = tiny;
        c = x + a / c;
        if (c == 0.0) c = tiny;
        d = 1.0 / d;
        const double mult = c * d;
        f *= mult;
        if (std::fabs(mult - 1.0) < 1e-17) break;
    }
    return kInvSqrtPi * std::exp(-x * x) / f;
}

// Maclaurin series sum_{k>=1} w^k / k^2 for |w| <= 1/2 (geometric tail).
double dilog_series(double w) {
    double power = w;
    double sum = w;
    for (int k = 2; k < 120; ++k) {
        power *= w;
        const double term = power / static_cast<double>(k * k);
        sum += term;
        if (std::fabs(term) <= std::numeric_limits<double>::epsilon() * std::fabs(sum)) break;
    }
    return sum;
}

// Li2 on [-1, 0] via the Landen transformation
//   Li2(z) = -ln(1-z)^2 / 2 - Li2(z/(z-1)),
// mapping the argument into [0, 1/2] where the series is fast.
double dilog_unit(double z) {
    if (z == 0.0) return 0.0;
    const double w = z / (z - 1.0);  // in (0, 1/2] for z in [-1, 0)
    const double lg = std::log1p(-z);
    return -0.5 * lg * lg - dilog_series(w);
}

}  // namespace

double erf(double x) {
    if (std::isnan(x)) return x;
    const double ax = std::fabs(x);
    double r;
    if (ax <= 1.5) {
        r = erf_series(ax);
    } else if (ax >= 6.5) {
        r = 1.0;  // erfc < 4e-20, below double resolution of 1
    } else {
        r = 1.0 - erfc_cf(ax);
    }
    return x < 0.0 ? -r : r;
}

double erfc(double x) {
    if (std::isnan(x)) return x;
    if (x >= 1.5) return erfc_cf(x);  // underflows to 0 past x ~ 27
    if (x <= -1.5) return 2.0 - erfc_cf(-x);
    const double e = x < 0.0 ? -erf_series(-x) : erf_series(x);
    return 1.0 - e;
}

double dilog(double x) {
    if (std::isnan(x)) throw_invalid("dilog: argument is NaN");
    if (x > 0.0) throw_domain("dilog: positive arguments are outside the supported branch");
    if (x >= -1.0) return dilog_unit(x);
    // Inversion identity onto (-1, 0).
    const double lg = std::log(-x);
    return -kPi * kPi / 6.0 - 0.5 * lg * lg - dilog_unit(1.0 / x);
}

double arcsinh(double x) {
    const double ax = std::fabs(x);
    // log1p form keeps full relative accuracy for small |x|.
    const double r = std::log1p(ax + ax * ax / (1.0 + std::sqrt(1.0 + ax * ax)));
    return x < 0.0 ? -r : r;
}

double normal_cdf(double x) { return 0.5 * erfc(-x * kInvSqrt2); }

double normal_pdf(double x) { return 0.5 * kSqrt2OverPi * std::exp(-0.5 * x * x); }

}  // namespace truncrange::specfun
