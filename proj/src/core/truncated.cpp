// Copyright (c) 2026 The truncrange authors
// SPDX-License-Identifier: Apache-2.0

#include "truncated.hpp"

#include <cmath>
#include <string>

#include "errors.hpp"
#include "rng.hpp"

namespace truncrange {

TruncatedDistribution::TruncatedDistribution(Family f, double a, double b)
    : family_(f), lower_(a), upper_(b), g_lower_(skewing::cdf(f, a)), g_upper_(skewing::cdf(f, b)) {
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw_invalid("truncated support endpoints must be finite");
    }
    if (!(a < b)) throw_invalid("truncated support requires a < b");
    if (!(g_upper_ - g_lower_ > 0.0)) {
        throw_invalid("truncated support (" + std::to_string(a) + ", " + std::to_string(b) +
                      ") carries no probability mass for family " +
                      std::string(family_name(f)));
    }
}

TruncatedDistribution TruncatedDistribution::between(Family f, double a, double b) {
    return TruncatedDistribution(f, a, b);
}

TruncatedDistribution TruncatedDistribution::symmetric(Family f, double ell) {
    if (!(ell > 0.0)) throw_invalid("symmetric truncation requires ell > 0");
    return TruncatedDistribution(f, -ell, ell);
}

double TruncatedDistribution::cdf(double x) const {
    if (x <= lower_) return 0.0;
    if (x >= upper_) return 1.0;
    const double v = (skewing::cdf(family_, x) - g_lower_) / mass();
    return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
}

double TruncatedDistribution::pdf(double x) const {
    if (x < lower_ || x > upper_) return 0.0;
    return skewing::pdf(family_, x) / mass();
}

double TruncatedDistribution::quantile(double u) const {
    if (!(u > 0.0 && u < 1.0)) throw_invalid("quantile: u must lie strictly inside (0, 1)");

    double lo = lower_;
    double hi = upper_;
    int iterations = 0;
    const int max_iterations = 200;

    // Bisection down to a bracket of width 1e-6 (capped at a quarter of the
    // support for very narrow distributions).
    const double bracket_goal = std::min(1e-6, 0.25 * width());
    double x = 0.5 * (lo + hi);
    while (hi - lo > bracket_goal && iterations < max_iterations) {
        ++iterations;
        x = 0.5 * (lo + hi);
        if (cdf(x) < u) {
            lo = x;
        } else {
            hi = x;
        }
    }

    // Newton polish, falling back to bisection whenever the step leaves the
    // bracket or the density is unusable.
    x = 0.5 * (lo + hi);
    double residual = cdf(x) - u;
    while (std::fabs(residual) > 1e-13 && iterations < max_iterations) {
        ++iterations;
        const double density = pdf(x);
        double next = density > 0.0 ? x - residual / density : x;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        x = next;
        residual = cdf(x) - u;
        if (residual < 0.0) {
            lo = std::max(lo, x);
        } else {
            hi = std::min(hi, x);
        }
        if (!(hi - lo > 0.0)) break;  // bracket exhausted at machine precision
    }

    if (std::fabs(residual) > 1e-12 && hi - lo > 1e-12 * width()) {
        throw_convergence("quantile did not converge after " + std::to_string(iterations) +
                          " iterations; residual " + std::to_string(residual));
    }

    // Sampling never emits support endpoints.
    if (x <= lower_) x = std::nextafter(lower_, upper_);
    if (x >= upper_) x = std::nextafter(upper_, lower_);
    return x;
}

std::vector<double> TruncatedDistribution::sample(std::size_t n, std::uint64_t seed) const {
    std::vector<double> out;
    out.reserve(n);
    SplitMix64 rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(quantile(rng.next_open01()));
    }
    return out;
}

}  // namespace truncrange
