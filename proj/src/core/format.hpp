// Copyright (c) 2026 The truncrange authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdio>
#include <string>

namespace truncrange {

// All numeric file output goes through this one formatter: 15 significant
// digits, C locale.  A value printed this way re-parses to a double whose
// re-serialization is the same string, so emitted files are stable under
// parse/emit cycles.
inline std::string format_g15(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

}  // namespace truncrange
