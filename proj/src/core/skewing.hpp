// Copyright (c) 2026 The truncrange authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

namespace truncrange {

// A skewing function is a symmetric CDF G with G(-x) = 1 - G(x).  Five
// standard-parameterization families are supported.
enum class Family {
    normal,
    student_t2,
    cauchy,
    laplace,
    logistic,
};

inline constexpr Family kAllFamilies[] = {
    Family::normal, Family::student_t2, Family::cauchy, Family::laplace, Family::logistic,
};

// Lowercase names used by the CLI and file formats:
// "normal", "student-t2", "cauchy", "laplace", "logistic".
std::string_view family_name(Family f);
Family family_from_name(std::string_view name);  // throws Error(invalid_argument)

namespace skewing {

// CDF G(x); tail-accurate in both directions.
double cdf(Family f, double x);

// G(x) - 1/2 without cancellation; the workhorse for small-range limits.
double cdf_centered(Family f, double x);

// Density G'(x); symmetric and non-negative.
double pdf(Family f, double x);

// C(ell) = (2/ell^2) * integral of y G(y) dy over [0, ell], the constant in
// the variance identity sigma^2 = ell^2 H(ell).

// Closed form per family.  Below ell = 1e-2 the closed forms lose digits to
// cancellation and the quadrature route is used instead.
double c_closed(Family f, double ell);

// Defining integral by adaptive quadrature; serves as the closed forms'
// oracle.  Evaluated in centered form so C - 1/2 keeps full accuracy.
double c_quadrature(Family f, double ell);

// 2*C(ell) - 1 evaluated without subtracting near-equal halves (quadrature
// of y*(G(y) - 1/2)); used where C itself is too coarse.
double two_c_minus_one_quadrature(Family f, double ell);

// Threshold below which c_closed defers to c_quadrature.
inline constexpr double kSmallEllFallback = 1e-2;

}  // namespace skewing

}  // namespace truncrange
