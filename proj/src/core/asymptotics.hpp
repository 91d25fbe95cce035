// Copyright (c) 2026 The truncrange authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "moments.hpp"
#include "truncated.hpp"

namespace truncrange::asymptotics {

// E[((X-a)/(b-a))^p] for p > -1 by direct quadrature of the normalized
// variable; the base is positive, so real orders are admissible.
double normalized_moment(const TruncatedDistribution& d, double order);

struct LimitCheck {
    double parameter = 0.0;  // the probed ell
    double observed = 0.0;
    double target = 0.0;
    double abs_error = 0.0;
};

enum class SweepMode {
    normalized_moment,   // E[((X-a)/(b-a))^p] on symmetric supports
    h,                   // H(ell)
    sigma2_over_ell,     // ell * H(ell) = sigma^2 / ell
    sigma2_over_width2,  // sigma^2 / (b-a)^2
};

// Small-range sweep: targets 1/(p+1) for normalized moments, 1/3 for H,
// and 1/12 for sigma^2/(b-a)^2.  `ells` should decrease toward 0.
std::vector<LimitCheck> limit_sweep_small(Family f, SweepMode mode, double order,
                                          std::span<const double> ells, int jobs = 1);

// Large-range sweep: targets 1/2^p for normalized moments, 0 for H and
// sigma^2/(b-a)^2, and the family tail constant for sigma^2/ell
// (2/pi for cauchy, 0 otherwise).
std::vector<LimitCheck> limit_sweep_large(Family f, SweepMode mode, double order,
                                          std::span<const double> ells, int jobs = 1);

// CSV export: header "ell,observed,target,abs_error", 15 significant digits.
void write_sweep_csv(std::ostream& out, std::span<const LimitCheck> checks);

// The (ell, H, sigma/ell) line of the variance-range relationship over a
// log-spaced grid.
struct HCurvePoint {
    double ell = 0.0;
    double h = 0.0;
    double sigma_over_ell = 0.0;
};

std::vector<HCurvePoint> h_curve(Family f, double ell_min, double ell_max, std::size_t points,
                                 HMode mode = HMode::closed, int jobs = 1);

// CSV export: header "ell,h,sigma_over_ell".
void write_h_curve_csv(std::ostream& out, std::span<const HCurvePoint> points);

}  // namespace truncrange::asymptotics
