// Copyright (c) 2026 The truncrange authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <span>

#include "errors.hpp"

namespace truncrange::stats {

// Neumaier-compensated running sum; used for the prefix-sum curve pass so
// long accumulations do not drift.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double mean(std::span<const double> xs) {
    if (xs.empty()) throw_invalid("mean of empty sample");
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

// Canonical two-pass sample standard deviation (n-1 denominator).
inline double sample_std(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n < 2) throw_invalid("sample_std needs at least two observations");
    const double m = mean(xs);
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(n - 1));
}

// Population (n denominator) standard deviation; the range inequality is a
// population statement, so the empirical check uses this form.
inline double population_std(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n < 1) throw_invalid("population_std of empty sample");
    const double m = mean(xs);
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(n));
}

}  // namespace truncrange::stats
