// Copyright (c) 2026 The truncrange authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>

#include <doctest.h>

#include "core/errors.hpp"
#include "core/quadrature.hpp"
#include "core/specfun.hpp"

using truncrange::Error;
namespace specfun = truncrange::specfun;

namespace {

constexpr double kPi = std::numbers::pi;

// Oracle: the defining integral (2/sqrt(pi)) * int_0^x exp(-t^2) dt.
double erf_by_quadrature(double x) {
    truncrange::quad::Options opt;
    opt.rel_tol = 1e-13;
    const double integral = truncrange::quad::integrate_or_throw(
        [](double t) { return std::exp(-t * t); }, 0.0, x, opt);
    return 2.0 / std::sqrt(kPi) * integral;
}

// Oracle: Li2(x) = -int_0^x log(1-t)/t dt, integrated directly.
double dilog_by_quadrature(double x) {
    truncrange::quad::Options opt;
    opt.rel_tol = 1e-13;
    return truncrange::quad::integrate_or_throw(
        [](double t) { return t == 0.0 ? -1.0 : std::log1p(-t) / t; }, x, 0.0, opt);
}

// Oracle: direct series sum_k x^k/k^2 on [-1, 0]; alternating tail bounds the
// truncation error by the first omitted term.
double dilog_by_series(double x) {
    REQUIRE(x <= 0.0);
    REQUIRE(x >= -1.0);
    double power = x;
    double sum = 0.0;
    for (long k = 1; k <= 400000; ++k) {
        sum += power / (static_cast<double>(k) * static_cast<double>(k));
        power *= x;
        if (std::fabs(power) < 1e-16) break;
    }
    return sum;
}

}  // namespace

TEST_CASE("erf matches its defining integral") {
    for (double x : {0.1, 0.5, 1.0, 1.4999, 1.5001, 2.0, 3.0, 5.0}) {
        const double oracle = erf_by_quadrature(x);
        CHECK(specfun::erf(x) == doctest::Approx(oracle).epsilon(2e-14));
    }
}

TEST_CASE("erf pinned values") {
    CHECK(specfun::erf(0.0) == 0.0);
    CHECK(specfun::erf(1.0) == doctest::Approx(0.8427007929497149).epsilon(1e-13));
    CHECK(specfun::erf(-1.0) == doctest::Approx(-0.8427007929497149).epsilon(1e-13));
}

TEST_CASE("erf is odd, monotone, bounded, and saturates") {
    double prev = -1.0;
    for (double x = -6.0; x <= 6.0; x += 0.25) {
        const double v = specfun::erf(x);
        CHECK(specfun::erf(-x) == -v);  // same computation path, so exact
        // |erf| < 1 holds mathematically everywhere; in doubles the value
        // rounds to exactly 1 once 1 - erf(x) drops below half an ulp.
        if (std::fabs(x) <= 5.0) {
            CHECK(std::fabs(v) < 1.0);
        } else {
            CHECK(std::fabs(v) <= 1.0);
        }
        CHECK(v >= prev);
        prev = v;
    }
    CHECK(specfun::erf(7.0) == 1.0);
    CHECK(specfun::erf(-40.0) == -1.0);
    // Cross-check against the C library implementation.
    for (double x : {0.2, 0.9, 1.7, 2.6, 4.1}) {
        CHECK(specfun::erf(x) == doctest::Approx(std::erf(x)).epsilon(2e-15));
    }
}

TEST_CASE("erfc keeps relative accuracy in the upper tail") {
    for (double x : {1.6, 2.0, 4.0, 8.0, 15.0, 26.0}) {
        CHECK(specfun::erfc(x) == doctest::Approx(std::erfc(x)).epsilon(2e-13));
    }
    CHECK(specfun::erfc(-3.0) == doctest::Approx(2.0 - specfun::erfc(3.0)).epsilon(1e-15));
    CHECK(specfun::erfc(0.0) == 1.0);
}

TEST_CASE("dilog matches series and quadrature oracles on [-50, 0]") {
    // Inside the series' radius both oracles apply.
    for (double x = -1.0; x <= 0.0; x += 0.125) {
        CHECK(specfun::dilog(x) == doctest::Approx(dilog_by_series(x)).scale(1.0).epsilon(5e-11));
    }
    // Out to -50: the direct series is summed at the reflected argument 1/x
    // and mapped through the inversion identity, plus a quadrature check of
    // the defining integral.
    for (double x : {-1.5, -2.0, -5.0, -10.0, -25.0, -50.0}) {
        const double lg = std::log(-x);
        const double via_series = -kPi * kPi / 6.0 - 0.5 * lg * lg - dilog_by_series(1.0 / x);
        CHECK(specfun::dilog(x) == doctest::Approx(via_series).scale(1.0).epsilon(5e-11));
        CHECK(specfun::dilog(x) == doctest::Approx(dilog_by_quadrature(x)).epsilon(1e-11));
    }
}

TEST_CASE("dilog pinned values") {
    CHECK(specfun::dilog(0.0) == 0.0);
    CHECK(specfun::dilog(-1.0) == doctest::Approx(-kPi * kPi / 12.0).epsilon(1e-13));
}

TEST_CASE("dilog inversion identity") {
    for (double y : {2.0, 10.0, std::exp(10.0)}) {
        const double lhs = specfun::dilog(-y) + specfun::dilog(-1.0 / y);
        const double rhs = -kPi * kPi / 6.0 - 0.5 * std::log(y) * std::log(y);
        CHECK(lhs == doctest::Approx(rhs).scale(1.0).epsilon(2e-12));
    }
    // At y = e^10 the right side is -pi^2/6 - 50.
    const double lhs = specfun::dilog(-std::exp(10.0)) + specfun::dilog(-std::exp(-10.0));
    CHECK(lhs == doctest::Approx(-kPi * kPi / 6.0 - 50.0).epsilon(1e-12));
}

TEST_CASE("dilog rejects the positive branch") {
    CHECK_THROWS_AS(specfun::dilog(0.5), Error);
    CHECK_THROWS_AS(specfun::dilog(1e-9), Error);
}

TEST_CASE("arcsinh") {
    CHECK(specfun::arcsinh(0.0) == 0.0);
    const double x = 1.0 / std::sqrt(2.0);
    CHECK(specfun::arcsinh(x) ==
          doctest::Approx(std::log(x + std::sqrt(x * x + 1.0))).epsilon(1e-15));
    CHECK(specfun::arcsinh(x) == doctest::Approx(0.6584789484624084).epsilon(1e-13));
    for (double v : {1e-8, 0.3, 2.0, 1e3, 1e8}) {
        CHECK(specfun::arcsinh(-v) == -specfun::arcsinh(v));
        CHECK(specfun::arcsinh(v) == doctest::Approx(std::asinh(v)).epsilon(1e-15));
    }
}

TEST_CASE("standard normal cdf and pdf") {
    CHECK(specfun::normal_cdf(0.0) == 0.5);
    CHECK(specfun::normal_cdf(1.0) == doctest::Approx(0.8413447460685429).epsilon(1e-13));
    CHECK(specfun::normal_pdf(0.0) == doctest::Approx(0.3989422804014327).epsilon(1e-15));
    for (double x : {-3.0, -0.7, 0.4, 2.5}) {
        CHECK(specfun::normal_cdf(x) + specfun::normal_cdf(-x) ==
              doctest::Approx(1.0).epsilon(1e-14));
    }
    // Deep tail stays positive and accurate rather than cancelling to zero.
    CHECK(specfun::normal_cdf(-10.0) == doctest::Approx(std::erfc(10.0 / std::sqrt(2.0)) / 2.0)
                                            .epsilon(1e-12));
}
