// Copyright (c) 2026 The truncrange authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "truncated.hpp"

namespace truncrange::bounds {

// Slack is signed toward satisfaction: upper bounds report bound - actual,
// lower bounds report actual - bound, so `satisfied` is always
// slack >= -kSlackTolerance.
inline constexpr double kSlackTolerance = 1e-10;

struct BoundReport {
    double bound = 0.0;
    double actual = 0.0;
    double slack = 0.0;
    bool satisfied = false;
};

// Upper bound on E[(X-c)^p]:
//   even p:  (b-c)^p [1-F(c)] + (a-c)^p F(c)
//   odd  p:  (b-c)^p [1-F(c)]
BoundReport moment_upper_bound(const TruncatedDistribution& d, double center, int order);

// Lower bound for even p and c < t < b: E[(X-c)^p] >= (t-c)^p [F(b) - F(t)].
BoundReport lower_bound_even(const TruncatedDistribution& d, double center, int order, double t);

// The generalized range bound on min_c E[(X-c)^p]:
// ((b-a)/2)^p for even p, 0 for odd p >= 1.
double popoviciu_generalized(double a, double b, int order);

// Companion checker: minimizes E[(X-c)^p] over a 101-point interior c-grid
// refined by golden-section search and compares against the bound above.
BoundReport popoviciu_generalized_check(const TruncatedDistribution& d, int order,
                                        int grid_points = 101);

// Range bound on the variance itself: sigma^2 <= ((b-a)/2)^2.
BoundReport popoviciu_variance(const TruncatedDistribution& d);

// Reverse form: sigma^2 >= ((b-mu)/2)^2 [F(b) - F((mu+b)/2)].
BoundReport reverse_popoviciu(const TruncatedDistribution& d);

// Randomized verification over all families, widths spanning [1e-3, 1e3].
// Used by the CLI `bounds-check` verb and the acceptance suite.
struct FuzzKindStats {
    std::string kind;
    std::size_t checked = 0;
    std::size_t violations = 0;
    double worst_slack = 0.0;  // most adverse signed slack seen
};

struct FuzzReport {
    std::vector<FuzzKindStats> kinds;
    std::size_t instances = 0;
    bool all_satisfied = true;
};

FuzzReport fuzz(std::size_t instances, std::uint64_t seed);

}  // namespace truncrange::bounds
