// Copyright (c) 2026 The truncrange authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>

#include <doctest.h>

#include "core/errors.hpp"
#include "core/moments.hpp"
#include "core/quadrature.hpp"
#include "core/reference.hpp"
#include "core/rng.hpp"

using truncrange::Error;
using truncrange::Family;
using truncrange::HMode;
using truncrange::kAllFamilies;
using truncrange::TruncatedDistribution;
namespace reference = truncrange::reference;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("ipow") {
    CHECK(truncrange::ipow(2.0, 0) == 1.0);
    CHECK(truncrange::ipow(-3.0, 3) == -27.0);
    CHECK(truncrange::ipow(-2.0, 4) == 16.0);
    CHECK(truncrange::ipow(0.0, 1) == 0.0);
    CHECK_THROWS_AS(truncrange::ipow(2.0, -1), Error);
}

TEST_CASE("i_g basics") {
    // Degenerate interval.
    CHECK(truncrange::i_g(Family::normal, 0.3, 0.7, 0.7, 2.0) == 0.0);
    CHECK_THROWS_AS(truncrange::i_g(Family::normal, 0.0, 1.0, 0.0, 2.0), Error);
    CHECK_THROWS_AS(truncrange::i_g(Family::normal, 0.0, 0.0, 1.0, 0.0), Error);
    // Fractional power of a negative range is rejected.
    CHECK_THROWS_AS(truncrange::i_g(Family::normal, 0.0, -1.0, 1.0, 1.5), Error);
}

TEST_CASE("i_g pinned value for the Cauchy kernel") {
    // int_0^1 y (arctan(y)/pi + 1/2) dy = 1/2 - 1/(2 pi).
    const double expected = 0.5 - 1.0 / (2.0 * kPi);
    CHECK(truncrange::i_g(Family::cauchy, 0.0, 0.0, 1.0, 2.0) ==
          doctest::Approx(expected).epsilon(1e-12));
    CHECK(expected == doctest::Approx(0.34084505690810465).epsilon(1e-15));
}

TEST_CASE("i_g over a symmetric range integrates G to half the length") {
    for (Family f : kAllFamilies) {
        CHECK(truncrange::i_g(f, 0.0, -1.0, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-11));
    }
}

TEST_CASE("i_g handles the y^{p-1} singularity by splitting") {
    // p = 1/2: substitute y = u^2 to get an equivalent smooth integral.
    truncrange::quad::Options opt;
    opt.rel_tol = 1e-12;
    const double direct = truncrange::i_g(Family::logistic, 0.4, 0.0, 1.0, 0.5);
    const double substituted = truncrange::quad::integrate_or_throw(
        [](double u) { return 2.0 * truncrange::skewing::cdf(Family::logistic, u * u + 0.4); },
        0.0, 1.0, opt);
    CHECK(direct == doctest::Approx(substituted).epsilon(1e-9));
}

TEST_CASE("moment_about validates its inputs") {
    const auto d = TruncatedDistribution::between(Family::normal, -1.0, 1.0);
    CHECK_THROWS_AS(truncrange::moment_about(d, -1.0, 2), Error);
    CHECK_THROWS_AS(truncrange::moment_about(d, 1.5, 2), Error);
    CHECK_THROWS_AS(truncrange::moment_about(d, 0.0, 0), Error);
}

TEST_CASE("moment_about pinned values") {
    // Symmetric first moment vanishes.
    for (Family f : kAllFamilies) {
        const auto d = TruncatedDistribution::symmetric(f, 1.0);
        CHECK(std::fabs(truncrange::moment_about(d, 0.0, 1)) <= 1e-12);
    }
    // Truncated normal second moment (worked example).
    const auto normal = TruncatedDistribution::between(Family::normal, -1.0, 1.0);
    CHECK(truncrange::moment_about(normal, 0.0, 2) ==
          doctest::Approx(reference::normal_symmetric_variance(1.0)).epsilon(1e-10));
    CHECK(truncrange::moment_about(normal, 0.0, 2) == doctest::Approx(0.29112).epsilon(1e-4));
    // Truncated Cauchy second moment is 4/pi - 1 at ell = 1.
    const auto cauchy = TruncatedDistribution::between(Family::cauchy, -1.0, 1.0);
    CHECK(truncrange::moment_about(cauchy, 0.0, 2) ==
          doctest::Approx(4.0 / kPi - 1.0).epsilon(1e-10));
}

TEST_CASE("moment identity agrees with direct quadrature on fuzzed instances") {
    truncrange::SplitMix64 rng(0x31337);
    for (Family f : kAllFamilies) {
        for (int i = 0; i < 10; ++i) {
            const double center = rng.next_in(-3.0, 3.0);
            const double width = std::pow(10.0, rng.next_in(-2.0, 2.0));
            const auto d =
                TruncatedDistribution::between(f, center - 0.5 * width, center + 0.5 * width);
            const double c = d.lower() + d.width() * rng.next_in(0.05, 0.95);
            const int p = 1 + static_cast<int>(rng.next_u64() % 4);
            const double via_identity = truncrange::moment_about(d, c, p);
            const double via_quadrature = reference::moment_by_quadrature(d, c, p);
            const double scale =
                truncrange::ipow(std::max(d.upper() - c, c - d.lower()), p);
            CHECK(std::fabs(via_identity - via_quadrature) /
                      std::max(std::fabs(via_quadrature), 1e-3 * scale) <=
                  1e-8);
        }
    }
}

TEST_CASE("mean") {
    for (Family f : kAllFamilies) {
        CHECK(std::fabs(truncrange::mean(TruncatedDistribution::symmetric(f, 2.0))) <= 1e-12);
    }
    const auto shifted = TruncatedDistribution::between(Family::normal, 0.0, 2.0);
    const double mu = truncrange::mean(shifted);
    CHECK(mu > 0.0);
    CHECK(mu < 2.0);
    CHECK(mu == doctest::Approx(reference::mean_by_quadrature(shifted)).epsilon(1e-9));

    // Monte Carlo cross-check on an asymmetric Laplace support.
    const auto laplace = TruncatedDistribution::between(Family::laplace, -1.0, 3.0);
    const std::size_t n = 500000;
    const auto xs = laplace.sample(n, 5);
    double sum = 0.0;
    for (double x : xs) sum += x;
    const double sample_mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (double x : xs) ss += (x - sample_mean) * (x - sample_mean);
    const double se = std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
    CHECK(std::fabs(truncrange::mean(laplace) - sample_mean) <= 4.0 * se);
}

TEST_CASE("variance") {
    const auto d = TruncatedDistribution::between(Family::student_t2, -0.8, 2.2);
    const double v = truncrange::variance(d);
    CHECK(v > 0.0);
    CHECK(v == doctest::Approx(truncrange::moment_about(d, truncrange::mean(d), 2))
                   .epsilon(1e-10));
    CHECK(v == doctest::Approx(reference::variance_by_quadrature(d)).epsilon(1e-9));
    // Range bound.
    CHECK(v <= 1.5 * 1.5 + 1e-10);

    // Worked Cauchy value at ell = 1/2: 0.5/arctan(0.5) - 1.
    const auto cauchy = TruncatedDistribution::symmetric(Family::cauchy, 0.5);
    CHECK(truncrange::variance(cauchy) ==
          doctest::Approx(0.5 / std::atan(0.5) - 1.0).epsilon(1e-10));
}

TEST_CASE("h_function pinned values and limits") {
    CHECK(truncrange::h_function(Family::cauchy, 1.0, HMode::closed) ==
          doctest::Approx(4.0 / kPi - 1.0).epsilon(1e-12));
    CHECK(truncrange::h_function(Family::normal, 1.0, HMode::closed) ==
          doctest::Approx(reference::normal_symmetric_variance(1.0)).epsilon(1e-9));
    for (Family f : kAllFamilies) {
        CHECK(std::fabs(truncrange::h_function(f, 1e-3, HMode::closed) - 1.0 / 3.0) <= 1e-3);
        CHECK(std::fabs(truncrange::h_function(f, 1e-3, HMode::quadrature) - 1.0 / 3.0) <= 1e-3);
    }
    CHECK_THROWS_AS(truncrange::h_function(Family::normal, 0.0, HMode::closed), Error);
}

TEST_CASE("h_function: closed and quadrature modes agree") {
    for (Family f : kAllFamilies) {
        for (double ell : {1e-2, 0.3, 1.0, 7.0, 90.0}) {
            const double closed = truncrange::h_function(f, ell, HMode::closed);
            const double quadrature = truncrange::h_function(f, ell, HMode::quadrature);
            CHECK(closed == doctest::Approx(quadrature).epsilon(1e-9));
            CHECK(closed > 0.0);
            CHECK(closed < 1.0);
        }
    }
}

TEST_CASE("ell^2 H(ell) is the symmetric variance") {
    for (Family f : kAllFamilies) {
        for (double ell : {1e-2, 0.1, 1.0, 10.0, 100.0}) {
            const double via_h = truncrange::symmetric_variance(f, ell, HMode::closed);
            const double via_moments = truncrange::variance(TruncatedDistribution::symmetric(f, ell));
            CHECK(via_h == doctest::Approx(via_moments).epsilon(1e-8));
        }
    }
}

TEST_CASE("odd central moments of symmetric distributions vanish") {
    for (Family f : kAllFamilies) {
        for (double ell : {0.5, 1.0, 3.0}) {
            const auto d = TruncatedDistribution::symmetric(f, ell);
            for (int p : {1, 3, 5}) {
                CHECK(std::fabs(truncrange::moment_about(d, 0.0, p)) <=
                      1e-10 * truncrange::ipow(ell, p));
            }
        }
    }
}
