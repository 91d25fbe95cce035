// Copyright (c) 2026 The truncrange authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

namespace truncrange {

// SplitMix64 (Steele, Lea, Flood; public domain reference constants).
// Every stochastic routine in the library draws from this generator so that
// a seed pins the output bit-for-bit.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform draw on the open interval (0, 1): 53-bit mantissa offset by
    // half a step, so 0 and 1 are never produced.
    double next_open01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Uniform on (lo, hi).
    double next_in(double lo, double hi) { return lo + (hi - lo) * next_open01(); }

private:
    std::uint64_t state_;
};

}  // namespace truncrange
