// Copyright (c) 2026 The truncrange authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <vector>

#include "errors.hpp"

namespace truncrange::quad {

struct Options {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    int max_segments = 4000;
};

struct Result {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = false;
    int segments = 0;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK dqk15
// abscissae and weights, positive half).
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};

inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};

inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct SegmentEstimate {
    double value;
    double error;
    double resabs;  // integral of |f|, for the roundoff floor
};

// One Gauss-Kronrod 15 pass over [lo, hi] with the QUADPACK error heuristic.
template <class F>
SegmentEstimate gk15(F&& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    double fv[15];
    fv[7] = f(center);
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        fv[j] = f(center - dx);
        fv[14 - j] = f(center + dx);
    }

    double resg = kWg[3] * fv[7];
    double resk = kWgk[7] * fv[7];
    double resabs = kWgk[7] * std::fabs(fv[7]);
    for (int j = 0; j < 7; ++j) {
        const double sum = fv[j] + fv[14 - j];
        resk += kWgk[j] * sum;
        resabs += kWgk[j] * (std::fabs(fv[j]) + std::fabs(fv[14 - j]));
        if (j % 2 == 1) resg += kWg[j / 2] * sum;
    }

    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::fabs(fv[7] - reskh);
    for (int j = 0; j < 7; ++j) {
        resasc += kWgk[j] * (std::fabs(fv[j] - reskh) + std::fabs(fv[14 - j] - reskh));
    }

    const double abs_half = std::fabs(half);
    resasc *= abs_half;
    resabs *= abs_half;

    double err = std::fabs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    const double eps = std::numeric_limits<double>::epsilon();
    const double uflow = std::numeric_limits<double>::min();
    if (resabs > uflow / (50.0 * eps)) {
        err = std::max(eps * 50.0 * resabs, err);
    }
    return {resk * half, err, resabs};
}

struct Segment {
    double lo;
    double hi;
    double value;
    double error;
    double resabs;
    bool operator<(const Segment& other) const { return error < other.error; }
};

}  // namespace detail

// Globally adaptive integration of f over [lo, hi].  `interior_breaks` seeds
// extra initial segment boundaries (kinks, known singular points).  The
// estimate is accepted once the summed error falls below
// max(abs_tol, rel_tol * |value|).
template <class F>
Result integrate(F&& f, double lo, double hi, Options opt = {},
                 std::span<const double> interior_breaks = {}) {
    Result out;
    if (!(lo <= hi)) throw_invalid("quadrature: lower limit exceeds upper limit");
    if (lo == hi) {
        out.converged = true;
        return out;
    }

    std::vector<double> edges;
    edges.push_back(lo);
    for (double b : interior_breaks) {
        if (b > lo && b < hi) edges.push_back(b);
    }
    edges.push_back(hi);
    std::sort(edges.begin(), edges.end());

    std::priority_queue<detail::Segment> active;
    double total = 0.0;
    double total_err = 0.0;
    double total_resabs = 0.0;
    double settled = 0.0;      // contributions of segments too narrow to split
    double settled_err = 0.0;
    int n_segments = 0;

    auto push_segment = [&](double a, double b) {
        auto est = detail::gk15(f, a, b);
        total += est.value;
        total_err += est.error;
        total_resabs += est.resabs;
        active.push({a, b, est.value, est.error, est.resabs});
        ++n_segments;
    };

    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        push_segment(edges[i], edges[i + 1]);
    }

    // Cancellation can leave |total| far below the integral of |f|; the
    // roundoff floor keeps the relative criterion from demanding digits
    // double precision cannot represent.
    auto tolerance = [&] {
        const double roundoff = 100.0 * std::numeric_limits<double>::epsilon() * total_resabs;
        return std::max({opt.abs_tol, opt.rel_tol * std::fabs(total + settled), roundoff});
    };

    while (total_err + settled_err > tolerance() && !active.empty() &&
           n_segments < opt.max_segments) {
        detail::Segment worst = active.top();
        active.pop();
        total -= worst.value;
        total_err -= worst.error;
        total_resabs -= worst.resabs;

        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo) || !(mid < worst.hi)) {
            // Interval narrowed to machine resolution; freeze it.
            settled += worst.value;
            settled_err += worst.error;
            total_resabs += worst.resabs;
            continue;
        }
        --n_segments;  // replaced by the two halves counted below
        push_segment(worst.lo, mid);
        push_segment(mid, worst.hi);
    }

    out.value = total + settled;
    out.error_estimate = total_err + settled_err;
    out.converged = out.error_estimate <= tolerance();
    out.segments = n_segments;
    return out;
}

// Same as integrate() but throws on failed convergence, carrying the achieved
// error estimate in the message.
template <class F>
double integrate_or_throw(F&& f, double lo, double hi, Options opt = {},
                          std::span<const double> interior_breaks = {}) {
    Result r = integrate(std::forward<F>(f), lo, hi, opt, interior_breaks);
    if (!r.converged) {
        throw_convergence("quadrature did not converge: achieved error estimate " +
                          std::to_string(r.error_estimate) + " over " +
                          std::to_string(r.segments) + " segments");
    }
    return r.value;
}

}  // namespace truncrange::quad
