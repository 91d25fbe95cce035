// Copyright (c) 2026 The truncrange authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace truncrange::specfun {

// Error function (2/sqrt(pi)) * integral of exp(-t^2) from 0 to x.
// Odd, strictly increasing, |erf(x)| < 1 for finite x; saturates to +-1.
double erf(double x);

// Complement 1 - erf(x), accurate in the upper tail.
double erfc(double x);

// Dilogarithm Li2(x) = -integral of log(1-t)/t from 0 to x, for x <= 0 only.
// Large negative arguments are mapped through the inversion identity
// Li2(-y) + Li2(-1/y) = -pi^2/6 - ln(y)^2 / 2 before series evaluation.
// Throws Error(domain) for x > 0.
double dilog(double x);

// Inverse hyperbolic sine log(x + sqrt(x^2 + 1)), odd, full real line.
double arcsinh(double x);

// Standard normal CDF and density, built on erfc.
double normal_cdf(double x);
double normal_pdf(double x);

}  // namespace truncrange::specfun
