// Copyright (c) 2026 The truncrange authors
// SPDX-License-Identifier: Apache-2.0

#include "skewing.hpp"

#include <cmath>
#include <numbers>

#include "errors.hpp"
#include "quadrature.hpp"
#include "specfun.hpp"

namespace truncrange {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kInvSqrt2 = 0.707106781186547524400844362105;
constexpr double kSqrt2OverPi = 0.797884560802865355879892119869;
}  // namespace

std::string_view family_name(Family f) {
    switch (f) {
        case Family::normal: return "normal";
        case Family::student_t2: return "student-t2";
        case Family::cauchy: return "cauchy";
        case Family::laplace: return "laplace";
        case Family::logistic: return "logistic";
    }
    throw_invalid("unknown family enumerator");
}

Family family_from_name(std::string_view name) {
    for (Family f : kAllFamilies) {
        if (name == family_name(f)) return f;
    }
    throw_invalid("unknown family name '" + std::string(name) +
                  "' (expected normal, student-t2, cauchy, laplace or logistic)");
}

namespace skewing {

double cdf(Family f, double x) {
    switch (f) {
        case Family::normal:
            return specfun::normal_cdf(x);
        case Family::student_t2: {
            // G(x) = (1 + x/sqrt(x^2+2)) / 2; rationalized in the lower tail.
            const double h = std::hypot(x, kSqrt2);
            if (x < 0.0) return 1.0 / (h * (h - x));
            return 0.5 * (1.0 + x / h);
        }
        case Family::cauchy:
            if (x < -1.0) return std::atan(-1.0 / x) / kPi;
            if (x > 1.0) return 1.0 - std::atan(1.0 / x) / kPi;
            return 0.5 + std::atan(x) / kPi;
        case Family::laplace:
            return x < 0.0 ? 0.5 * std::exp(x) : 1.0 - 0.5 * std::exp(-x);
        case Family::logistic: {
            if (x <= 0.0) {
                const double u = std::exp(x);
                return u / (1.0 + u);
            }
            return 1.0 / (1.0 + std::exp(-x));
        }
    }
    throw_invalid("unknown family enumerator");
}

double cdf_centered(Family f, double x) {
    switch (f) {
        case Family::normal:
            return 0.5 * specfun::erf(x * kInvSqrt2);
        case Family::student_t2:
            return 0.5 * x / std::hypot(x, kSqrt2);
        case Family::cauchy:
            return std::atan(x) / kPi;
        case Family::laplace: {
            const double m = -0.5 * std::expm1(-std::fabs(x));
            return x < 0.0 ? -m : m;
        }
        case Family::logistic:
            return 0.5 * std::tanh(0.5 * x);
    }
    throw_invalid("unknown family enumerator");
}

double pdf(Family f, double x) {
    switch (f) {
        case Family::normal:
            return specfun::normal_pdf(x);
        case Family::student_t2: {
            const double h = std::hypot(x, kSqrt2);
            return 1.0 / (h * h * h);
        }
        case Family::cauchy:
            return 1.0 / (kPi * (1.0 + x * x));
        case Family::laplace:
            return 0.5 * std::exp(-std::fabs(x));
        case Family::logistic: {
            const double u = std::exp(-std::fabs(x));
            const double onep = 1.0 + u;
            return u / (onep * onep);
        }
    }
    throw_invalid("unknown family enumerator");
}

namespace {

double c_closed_normal(double ell) {
    const double phi_term = ell * (ell + std::exp(-0.5 * ell * ell) * kSqrt2OverPi);
    const double erf_term = (ell * ell - 1.0) * specfun::erf(ell * kInvSqrt2);
    return 0.5 / (ell * ell) * (phi_term + erf_term);
}

double c_closed_student_t2(double ell) {
    const double root = std::sqrt(2.0 + ell * ell);
    return (0.5 * ell * ell + 0.5 * ell * root - specfun::arcsinh(ell * kInvSqrt2)) /
           (ell * ell);
}

double c_closed_cauchy(double ell) {
    return (ell * (ell * kPi - 2.0) + 2.0 * (1.0 + ell * ell) * std::atan(ell)) /
           (2.0 * kPi * ell * ell);
}

double c_closed_laplace(double ell) {
    // 1 + ((1+ell) e^{-ell} - 1) / ell^2 with the small difference assembled
    // from expm1 to limit cancellation.
    const double diff = std::expm1(-ell) + ell * std::exp(-ell);
    return 1.0 + diff / (ell * ell);
}

double c_closed_logistic(double ell) {
    // Printed form pi^2/12 + ell log(1+e^ell) + Li2(-e^ell), rearranged via
    // the dilog inversion so it stays finite for all ell:
    //   ell^2/2 - pi^2/12 + ell log1p(e^{-ell}) - Li2(-e^{-ell}).
    const double pi2_12 = kPi * kPi / 12.0;
    const double e = std::exp(-ell);
    const double body = 0.5 * ell * ell - pi2_12 + ell * std::log1p(e) - specfun::dilog(-e);
    return 2.0 * body / (ell * ell);
}

}  // namespace

double c_closed(Family f, double ell) {
    if (!(ell > 0.0)) throw_invalid("c_closed: ell must be positive");
    if (ell < kSmallEllFallback) return c_quadrature(f, ell);
    switch (f) {
        case Family::normal: return c_closed_normal(ell);
        case Family::student_t2: return c_closed_student_t2(ell);
        case Family::cauchy: return c_closed_cauchy(ell);
        case Family::laplace: return c_closed_laplace(ell);
        case Family::logistic: return c_closed_logistic(ell);
    }
    throw_invalid("unknown family enumerator");
}

double two_c_minus_one_quadrature(Family f, double ell) {
    if (!(ell > 0.0)) throw_invalid("c_quadrature: ell must be positive");
    // 2C - 1 = (4/ell^2) * integral of y (G(y) - 1/2); the integrand is
    // non-negative, so no digits are lost to subtraction.
    quad::Options opt;
    opt.rel_tol = 1e-12;
    const double integral =
        quad::integrate_or_throw([f](double y) { return y * cdf_centered(f, y); }, 0.0, ell, opt);
    return 4.0 * integral / (ell * ell);
}

double c_quadrature(Family f, double ell) {
    return 0.5 + 0.5 * two_c_minus_one_quadrature(f, ell);
}

}  // namespace skewing

}  // namespace truncrange
