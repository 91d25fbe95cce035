// Copyright (c) 2026 The truncrange authors
// SPDX-License-Identifier: Apache-2.0

#include "reference.hpp"

#include <cmath>

#include "errors.hpp"
#include "moments.hpp"
#include "quadrature.hpp"
#include "specfun.hpp"

namespace truncrange::reference {

std::vector<double> density_breakpoints(const TruncatedDistribution& d) {
    std::vector<double> breaks;
    auto add = [&](double x) {
        if (x > d.lower() && x < d.upper()) breaks.push_back(x);
    };
    add(0.0);
    for (double s = 1.0; s < d.width(); s *= 4.0) {
        add(s);
        add(-s);
    }
    return breaks;
}

double moment_by_quadrature(const TruncatedDistribution& d, double center, int order,
                            double rel_tol) {
    quad::Options opt;
    opt.rel_tol = rel_tol;
    opt.abs_tol = 1e-300;
    const double integral = quad::integrate_or_throw(
        [&](double x) { return ipow(x - center, order) * skewing::pdf(d.family(), x); },
        d.lower(), d.upper(), opt, density_breakpoints(d));
    return integral / d.mass();
}

double mean_by_quadrature(const TruncatedDistribution& d) {
    quad::Options opt;
    opt.rel_tol = 1e-12;
    opt.abs_tol = 1e-300;
    const double integral = quad::integrate_or_throw(
        [&](double x) { return x * skewing::pdf(d.family(), x); }, d.lower(), d.upper(), opt,
        density_breakpoints(d));
    return integral / d.mass();
}

double variance_by_quadrature(const TruncatedDistribution& d) {
    const double mu = mean_by_quadrature(d);
    quad::Options opt;
    opt.rel_tol = 1e-12;
    opt.abs_tol = 1e-300;
    const double integral = quad::integrate_or_throw(
        [&](double x) { return (x - mu) * (x - mu) * skewing::pdf(d.family(), x); }, d.lower(),
        d.upper(), opt, density_breakpoints(d));
    return integral / d.mass();
}

double cauchy_symmetric_variance(double ell) {
    if (!(ell > 0.0)) throw_invalid("cauchy_symmetric_variance: ell must be positive");
    return ell / std::atan(ell) - 1.0;
}

double normal_symmetric_variance(double ell) {
    if (!(ell > 0.0)) throw_invalid("normal_symmetric_variance: ell must be positive");
    const double density_at_ell =
        specfun::normal_pdf(ell) / (2.0 * skewing::cdf_centered(Family::normal, ell));
    return 1.0 - 2.0 * ell * density_at_ell;
}

}  // namespace truncrange::reference
