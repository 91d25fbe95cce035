// Copyright (c) 2026 The truncrange authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <string>
#include <vector>

namespace truncrange::selftest {

// The library's end-to-end verification battery: closed forms against their
// defining integrals, the moment identity against direct quadrature, worked
// examples, asymptotic limits, the inequality ladder, Monte Carlo agreement,
// the empirical pipeline, and byte-level pipeline determinism.

struct CheckResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct Config {
    bool quick = false;    // reduced counts for a fast smoke pass
    std::string cli_path;  // CLI binary for the determinism check; empty
                           // falls back to the in-process pipeline
    int jobs = 1;
};

inline constexpr int kCheckCount = 9;

// Runs check `id` (1-based).
CheckResult run_one(int id, const Config& config);

// Runs all checks in order, invoking `report` after each one.
std::vector<CheckResult> run_all(const Config& config,
                                 const std::function<void(const CheckResult&)>& report = {});

}  // namespace truncrange::selftest
