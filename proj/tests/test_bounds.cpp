// Copyright (c) 2026 The truncrange authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <doctest.h>

#include "core/bounds.hpp"
#include "core/errors.hpp"
#include "core/moments.hpp"
#include "core/rng.hpp"

using truncrange::Error;
using truncrange::Family;
using truncrange::kAllFamilies;
using truncrange::TruncatedDistribution;
namespace bounds = truncrange::bounds;

TEST_CASE("upper bound, worked normal example") {
    const auto d = TruncatedDistribution::between(Family::normal, -1.0, 1.0);
    const auto even = bounds::moment_upper_bound(d, 0.0, 2);
    // (1)^2 (1 - 1/2) + (-1)^2 (1/2) = 1.
    CHECK(even.bound == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(even.actual == doctest::Approx(0.29112).epsilon(1e-4));
    CHECK(even.satisfied);

    const auto odd = bounds::moment_upper_bound(d, 0.0, 1);
    CHECK(odd.bound == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::fabs(odd.actual) <= 1e-12);
    CHECK(odd.satisfied);
    // Odd-order bound is never negative while c <= b.
    CHECK(odd.bound >= 0.0);
}

TEST_CASE("upper bound input validation") {
    const auto d = TruncatedDistribution::between(Family::normal, -1.0, 1.0);
    CHECK_THROWS_AS(bounds::moment_upper_bound(d, -1.0, 2), Error);
    CHECK_THROWS_AS(bounds::moment_upper_bound(d, 0.0, 0), Error);
}

TEST_CASE("lower bound for even orders, worked example") {
    const auto d = TruncatedDistribution::between(Family::normal, -1.0, 1.0);
    const auto r = bounds::lower_bound_even(d, 0.0, 2, 0.5);
    const double expected_bound = 0.25 * (1.0 - d.cdf(0.5));
    CHECK(r.bound == doctest::Approx(expected_bound).epsilon(1e-12));
    CHECK(r.bound == doctest::Approx(0.054887).epsilon(1e-4));
    CHECK(r.satisfied);

    // As t approaches b the bound collapses to zero.
    const auto vanish = bounds::lower_bound_even(d, 0.0, 2, 1.0 - 1e-9);
    CHECK(vanish.bound <= 1e-9);
    CHECK(vanish.satisfied);

    CHECK_THROWS_AS(bounds::lower_bound_even(d, 0.0, 2, -0.2), Error);
    CHECK_THROWS_AS(bounds::lower_bound_even(d, 0.0, 2, 1.2), Error);
    CHECK_THROWS_AS(bounds::lower_bound_even(d, 0.0, 3, 0.5), Error);
}

TEST_CASE("generalized range bound values") {
    CHECK(bounds::popoviciu_generalized(-1.0, 1.0, 2) == 1.0);
    CHECK(bounds::popoviciu_generalized(0.0, 4.0, 4) == 16.0);
    CHECK(bounds::popoviciu_generalized(-2.0, 5.0, 3) == 0.0);
    CHECK_THROWS_AS(bounds::popoviciu_generalized(1.0, 1.0, 2), Error);
}

TEST_CASE("grid-min check holds for random distributions") {
    truncrange::SplitMix64 rng(404);
    for (int i = 0; i < 20; ++i) {
        const Family f = kAllFamilies[rng.next_u64() % 5];
        const double center = rng.next_in(-2.0, 2.0);
        const double width = std::pow(10.0, rng.next_in(-1.0, 2.0));
        const auto d =
            TruncatedDistribution::between(f, center - 0.5 * width, center + 0.5 * width);
        // Odd orders: the scanned minimum must dip to 0 or below.
        const auto odd = bounds::popoviciu_generalized_check(d, 3);
        CHECK(odd.satisfied);
        CHECK(odd.actual <= 0.0 + 1e-10);
        // Even orders: bounded by the half-width power.
        const auto even = bounds::popoviciu_generalized_check(d, 2);
        CHECK(even.satisfied);
    }
}

TEST_CASE("variance range bound and its reverse, worked examples") {
    const auto normal = TruncatedDistribution::between(Family::normal, -1.0, 1.0);
    const auto pop = bounds::popoviciu_variance(normal);
    CHECK(pop.bound == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pop.satisfied);

    const auto rev = bounds::reverse_popoviciu(normal);
    // mu = 0, so this is the even lower bound at t = 1/2.
    CHECK(rev.bound == doctest::Approx(0.25 * (1.0 - normal.cdf(0.5))).epsilon(1e-9));
    CHECK(rev.actual == doctest::Approx(0.29112).epsilon(1e-4));
    CHECK(rev.satisfied);

    const auto cauchy = TruncatedDistribution::between(Family::cauchy, -1.0, 1.0);
    const auto rev_cauchy = bounds::reverse_popoviciu(cauchy);
    CHECK(rev_cauchy.actual == doctest::Approx(4.0 / 3.141592653589793 - 1.0).epsilon(1e-9));
    CHECK(rev_cauchy.satisfied);

    const auto laplace = TruncatedDistribution::between(Family::laplace, 0.0, 5.0);
    const auto rev_laplace = bounds::reverse_popoviciu(laplace);
    CHECK(rev_laplace.satisfied);
    CHECK(rev_laplace.slack > 0.0);
}

TEST_CASE("sandwich: reverse bound <= variance <= range bound") {
    truncrange::SplitMix64 rng(777);
    for (int i = 0; i < 100; ++i) {
        const Family f = kAllFamilies[rng.next_u64() % 5];
        const double center = rng.next_in(-3.0, 3.0);
        const double width = std::pow(10.0, rng.next_in(-3.0, 3.0));
        const auto d =
            TruncatedDistribution::between(f, center - 0.5 * width, center + 0.5 * width);
        const double v = truncrange::variance(d);
        CHECK(bounds::reverse_popoviciu(d).bound <= v + 1e-10);
        CHECK(v <= bounds::popoviciu_generalized(d.lower(), d.upper(), 2) + 1e-10);
        // Odd-order upper bound never goes negative for interior centers.
        const double c = d.lower() + d.width() * rng.next_in(0.02, 0.98);
        CHECK(bounds::moment_upper_bound(d, c, 3).bound >= 0.0);
    }
}

TEST_CASE("fuzz across families and widths leaves every bound satisfied") {
    const auto report = bounds::fuzz(500, 0xfade);
    CHECK(report.all_satisfied);
    CHECK(report.kinds.size() == 7);
    for (const auto& kind : report.kinds) {
        CHECK(kind.checked == 500);
        CHECK(kind.violations == 0);
        CHECK(kind.worst_slack >= -bounds::kSlackTolerance);
    }
}
