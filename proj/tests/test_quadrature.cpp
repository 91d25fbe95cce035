// Copyright (c) 2026 The truncrange authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>

#include <doctest.h>

#include "core/errors.hpp"
#include "core/quadrature.hpp"

using truncrange::Error;
namespace quad = truncrange::quad;

TEST_CASE("polynomials are integrated to machine precision") {
    const auto r = quad::integrate([](double x) { return x * x; }, 0.0, 1.0);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    const auto r13 = quad::integrate([](double x) { return 14.0 * std::pow(x, 13.0); }, 0.0, 2.0);
    CHECK(r13.value == doctest::Approx(std::pow(2.0, 14.0)).epsilon(1e-13));
}

TEST_CASE("smooth transcendental integrand") {
    const auto r = quad::integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi);
    CHECK(r.converged);
    CHECK(std::fabs(r.value - 2.0) < 1e-12);
    CHECK(r.error_estimate >= std::fabs(r.value - 2.0));
}

TEST_CASE("integrable endpoint singularity") {
    quad::Options opt;
    opt.rel_tol = 1e-10;
    const auto r = quad::integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, opt);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("odd integrand needs the absolute tolerance") {
    quad::Options opt;
    opt.abs_tol = 1e-12;
    const auto r = quad::integrate([](double x) { return x * std::exp(-x * x); }, -3.0, 3.0, opt);
    CHECK(r.converged);
    CHECK(std::fabs(r.value) < 1e-12);
}

TEST_CASE("narrow peak on a wide interval is found") {
    // Standard normal density over (-1000, 1000): nearly all initial nodes
    // see zero, so convergence relies on adaptive refinement.
    const double inv_sqrt_2pi = 0.3989422804014327;
    const auto r = quad::integrate(
        [&](double x) { return inv_sqrt_2pi * std::exp(-0.5 * x * x); }, -1000.0, 1000.0);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("interior breakpoints seed the subdivision") {
    const double breaks[] = {0.0};
    const auto r = quad::integrate([](double x) { return std::fabs(x); }, -1.0, 2.0,
                                   quad::Options{}, breaks);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(2.5).epsilon(1e-13));
}

TEST_CASE("degenerate and invalid ranges") {
    const auto r = quad::integrate([](double x) { return x; }, 1.5, 1.5);
    CHECK(r.converged);
    CHECK(r.value == 0.0);
    CHECK_THROWS_AS(quad::integrate([](double x) { return x; }, 2.0, 1.0), Error);
}

TEST_CASE("budget exhaustion is reported, not hidden") {
    quad::Options opt;
    opt.max_segments = 2;
    opt.rel_tol = 1e-14;
    const auto r = quad::integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, opt);
    CHECK_FALSE(r.converged);
    CHECK(r.error_estimate > 0.0);
    CHECK_THROWS_AS(
        quad::integrate_or_throw([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, opt),
        Error);
}
