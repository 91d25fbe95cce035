// Copyright (c) 2026 The truncrange authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "truncated.hpp"

namespace truncrange::reference {

// Independent check routes: everything here integrates the density directly
// and never touches the boundary-term moment formula it is used to verify.

// Interior quadrature seed points that keep a unit-scale density peak
// visible to the adaptive rule on very wide supports.
std::vector<double> density_breakpoints(const TruncatedDistribution& d);

// E[(X-c)^p] by adaptive quadrature of (x-c)^p dF.
double moment_by_quadrature(const TruncatedDistribution& d, double center, int order,
                            double rel_tol = 1e-12);

// E(X) by quadrature of x dF.
double mean_by_quadrature(const TruncatedDistribution& d);

// Var(X) by quadrature of (x - E(X))^2 dF.
double variance_by_quadrature(const TruncatedDistribution& d);

// Closed-form variances of the two worked symmetric cases:
// standard Cauchy truncated at ell, sigma^2 = ell/arctan(ell) - 1.
double cauchy_symmetric_variance(double ell);

// standard normal truncated at ell, sigma^2 = 1 - 2 ell phi(ell)/(2 Phi(ell) - 1).
double normal_symmetric_variance(double ell);

}  // namespace truncrange::reference
