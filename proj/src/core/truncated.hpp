// Copyright (c) 2026 The truncrange authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "skewing.hpp"

namespace truncrange {

// A skewing function G restricted to (a, b) by conditioning:
//   F(x) = (G(x) - G(a)) / (G(b) - G(a)).
// Values are immutable; the symmetric constructor is pure convenience for
// support (-ell, ell).
class TruncatedDistribution {
public:
    static TruncatedDistribution between(Family f, double a, double b);
    static TruncatedDistribution symmetric(Family f, double ell);

    Family family() const { return family_; }
    double lower() const { return lower_; }
    double upper() const { return upper_; }
    double width() const { return upper_ - lower_; }
    double g_lower() const { return g_lower_; }
    double g_upper() const { return g_upper_; }
    double mass() const { return g_upper_ - g_lower_; }

    // Clamps to 0 below a and 1 above b.
    double cdf(double x) const;

    // Conditional density G'(x)/(G(b)-G(a)) on [a, b], 0 outside.
    double pdf(double x) const;

    // Inverse CDF for u in (0, 1): bisection bracket followed by a
    // safeguarded Newton polish, |F(x) - u| <= 1e-12 on success.
    double quantile(double u) const;

    // n inverse-CDF draws from a SplitMix64 stream; identical seeds give
    // identical sequences and every value lies strictly inside (a, b).
    std::vector<double> sample(std::size_t n, std::uint64_t seed) const;

private:
    TruncatedDistribution(Family f, double a, double b);

    Family family_;
    double lower_;
    double upper_;
    double g_lower_;
    double g_upper_;
};

}  // namespace truncrange
