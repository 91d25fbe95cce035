// Copyright (c) 2026 The truncrange authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <algorithm>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "core/errors.hpp"
#include "core/quadrature.hpp"
#include "core/rng.hpp"
#include "core/skewing.hpp"
#include "core/truncated.hpp"

using truncrange::Error;
using truncrange::Family;
using truncrange::kAllFamilies;
using truncrange::TruncatedDistribution;

namespace {

// Oracle: F(x) integrated from the density rather than read off G.
double cdf_by_quadrature(const TruncatedDistribution& d, double x) {
    truncrange::quad::Options opt;
    opt.rel_tol = 1e-12;
    return truncrange::quad::integrate_or_throw([&](double t) { return d.pdf(t); }, d.lower(), x,
                                                opt);
}

}  // namespace

TEST_CASE("construction validates the support") {
    CHECK_THROWS_AS(TruncatedDistribution::between(Family::normal, 1.0, 1.0), Error);
    CHECK_THROWS_AS(TruncatedDistribution::between(Family::normal, 2.0, -2.0), Error);
    CHECK_THROWS_AS(TruncatedDistribution::symmetric(Family::cauchy, 0.0), Error);
    CHECK_THROWS_AS(TruncatedDistribution::symmetric(Family::cauchy, -1.0), Error);
    // A support so deep in one tail that it carries no double-precision mass.
    CHECK_THROWS_AS(TruncatedDistribution::between(Family::normal, 500.0, 501.0), Error);
}

TEST_CASE("cdf clamps and matches the quadrature oracle") {
    const auto d = TruncatedDistribution::between(Family::normal, -1.0, 1.0);
    CHECK(d.cdf(-1.0) == 0.0);
    CHECK(d.cdf(-5.0) == 0.0);
    CHECK(d.cdf(1.0) == 1.0);
    CHECK(d.cdf(9.0) == 1.0);
    CHECK(d.cdf(0.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(d.cdf(0.5) == doctest::Approx(cdf_by_quadrature(d, 0.5)).epsilon(1e-10));
    CHECK(d.cdf(0.5) == doctest::Approx(0.78045).epsilon(1e-4));  // worked value
}

TEST_CASE("cdf is monotone over the support") {
    for (Family f : kAllFamilies) {
        const auto d = TruncatedDistribution::between(f, -0.5, 2.5);
        double prev = -0.1;
        for (double x = -0.6; x <= 2.6; x += 0.05) {
            const double v = d.cdf(x);
            CHECK(v >= prev);
            prev = v;
        }
    }
}

TEST_CASE("the symmetric constructor is the general one at (-ell, ell)") {
    for (Family f : kAllFamilies) {
        const auto sym = TruncatedDistribution::symmetric(f, 1.5);
        const auto gen = TruncatedDistribution::between(f, -1.5, 1.5);
        for (double x : {-1.4, -0.3, 0.0, 0.9, 1.49}) {
            CHECK(sym.cdf(x) == gen.cdf(x));  // identical path, bit for bit
            // And both agree with the centered-form expression.
            const double g = truncrange::skewing::cdf(f, x);
            const double gl = truncrange::skewing::cdf(f, 1.5);
            CHECK(sym.cdf(x) ==
                  doctest::Approx((g + gl - 1.0) / (2.0 * gl - 1.0)).epsilon(1e-13));
        }
    }
}

TEST_CASE("quantile inverts the cdf") {
    for (Family f : kAllFamilies) {
        const auto d = TruncatedDistribution::symmetric(f, 2.0);
        CHECK(std::fabs(d.quantile(0.5)) <= 1e-10);
        truncrange::SplitMix64 rng(17);
        for (int i = 0; i < 1000; ++i) {
            const double u = rng.next_open01();
            const double x = d.quantile(u);
            CHECK(std::fabs(d.cdf(x) - u) <= 1e-10);
        }
    }
}

TEST_CASE("quantile pinned value for the truncated Cauchy") {
    const auto d = TruncatedDistribution::between(Family::cauchy, -1.0, 1.0);
    // F(x) = 0.75 solves (arctan x + pi/4) / (pi/2) = 3/4, i.e. x = tan(pi/8).
    CHECK(d.quantile(0.75) == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-9));
    CHECK(d.quantile(0.75) == doctest::Approx(0.4142135623730951).epsilon(1e-9));
}

TEST_CASE("quantile rejects u outside (0,1)") {
    const auto d = TruncatedDistribution::symmetric(Family::normal, 1.0);
    CHECK_THROWS_AS(d.quantile(0.0), Error);
    CHECK_THROWS_AS(d.quantile(1.0), Error);
    CHECK_THROWS_AS(d.quantile(-0.2), Error);
}

TEST_CASE("sampling is deterministic, in-support, and seed-sensitive") {
    const auto d = TruncatedDistribution::between(Family::laplace, -0.5, 3.0);
    CHECK(d.sample(0, 7).empty());
    const auto a = d.sample(3000, 42);
    const auto b = d.sample(3000, 42);
    const auto c = d.sample(3000, 43);
    CHECK(a == b);
    CHECK(a != c);
    for (double x : a) {
        CHECK(x > d.lower());
        CHECK(x < d.upper());
    }
}

TEST_CASE("sample moments agree with the worked normal example") {
    const auto d = TruncatedDistribution::symmetric(Family::normal, 1.0);
    const std::size_t n = 200000;
    const auto xs = d.sample(n, 2026);
    double sum = 0.0;
    for (double x : xs) sum += x;
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    const double var = ss / static_cast<double>(n - 1);

    // sigma^2 = 1 - 2 ell phi(ell) / (2 Phi(ell) - 1) at ell = 1.
    const double phi1 = truncrange::skewing::pdf(Family::normal, 1.0);
    const double mass = 2.0 * truncrange::skewing::cdf_centered(Family::normal, 1.0);
    const double target = 1.0 - 2.0 * phi1 / mass;
    CHECK(target == doctest::Approx(0.29112).epsilon(1e-4));

    const double se_mean = std::sqrt(var / static_cast<double>(n));
    CHECK(std::fabs(mean) <= 4.0 * se_mean);
    // Standard error of the sample variance via the sample fourth moment.
    double m4 = 0.0;
    for (double x : xs) {
        const double dev = x - mean;
        m4 += dev * dev * dev * dev;
    }
    m4 /= static_cast<double>(n);
    const double se_var = std::sqrt((m4 - var * var) / static_cast<double>(n));
    CHECK(std::fabs(var - target) <= 4.0 * se_var);
}

TEST_CASE("Kolmogorov-Smirnov distance below the 1% critical value") {
    const std::size_t n = 100000;
    // Asymptotic critical value at alpha = 0.01.
    const double critical = 1.6276236115189504 / std::sqrt(static_cast<double>(n));
    std::uint64_t seed = 99;
    for (Family f : kAllFamilies) {
        const auto d = TruncatedDistribution::symmetric(f, 1.25);
        auto xs = d.sample(n, seed++);
        std::sort(xs.begin(), xs.end());
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double fx = d.cdf(xs[i]);
            const double hi = static_cast<double>(i + 1) / static_cast<double>(n) - fx;
            const double lo = fx - static_cast<double>(i) / static_cast<double>(n);
            worst = std::max({worst, hi, lo});
        }
        CHECK(worst < critical);
    }
}
