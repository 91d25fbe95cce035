// Copyright (c) 2026 The truncrange authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "quadrature.hpp"
#include "truncated.hpp"

namespace truncrange {

// Kernel integral I_G(c; s, t, p) = integral of y^{p-1} G(y+c) dy over [s, t].
// p > 0 and s < t are required; a non-integer p is rejected when s < 0
// (fractional power of a negative base).  The integrable singularity of
// y^{p-1} at 0 for p < 1 is handled by splitting the interval there.
double i_g(Family f, double c, double s, double t, double p, quad::Options opt = {});

// p-th moment about c per the boundary-term identity
//   E[(X-c)^p] = [(b-c)^p G(b) - (a-c)^p G(a) - p I_G(c; a-c, b-c, p)] / (G(b)-G(a)).
// Restricted to integer orders p >= 1; c must lie strictly inside (a, b).
double moment_about(const TruncatedDistribution& d, double center, int order);

// E(X), evaluated as the first moment about the support midpoint, shifted.
double mean(const TruncatedDistribution& d);

// Var(X) as the second moment about the mean (boundary-term route).
double variance(const TruncatedDistribution& d);

enum class HMode { closed, quadrature };

// H(ell) = 1 - (2C(ell)-1)/(2G(ell)-1), so that the symmetric truncated
// variance is ell^2 H(ell).  Below ell = 1e-2 both routes switch to a
// cancellation-free single-integral form.
double h_function(Family f, double ell, HMode mode);

// ell^2 * H(ell): the symmetric-case variance without going through the
// general boundary-term machinery.
double symmetric_variance(Family f, double ell, HMode mode = HMode::closed);

// Integer power with exact handling of negative bases.
double ipow(double base, int exponent);

}  // namespace truncrange
