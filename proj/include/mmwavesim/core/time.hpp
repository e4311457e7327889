/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef MMWAVESIM_CORE_TIME_HPP
#define MMWAVESIM_CORE_TIME_HPP

#include <cstdint>

namespace mmwavesim {

// Simulated time is integer nanoseconds. 64 bits cover ~292 years, so
// arithmetic never overflows for any supported simulation length.
using TimeNs = std::int64_t;

constexpr TimeNs kNsPerUs = 1'000;
constexpr TimeNs kNsPerMs = 1'000'000;
constexpr TimeNs kNsPerSec = 1'000'000'000;

constexpr TimeNs us_to_ns(double us) { return static_cast<TimeNs>(us * 1e3 + 0.5); }
constexpr TimeNs ms_to_ns(double ms) { return static_cast<TimeNs>(ms * 1e6 + 0.5); }
constexpr TimeNs sec_to_ns(double s) { return static_cast<TimeNs>(s * 1e9 + 0.5); }
constexpr double ns_to_sec(TimeNs t) { return static_cast<double>(t) * 1e-9; }
constexpr double ns_to_ms(TimeNs t) { return static_cast<double>(t) * 1e-6; }

}  // namespace mmwavesim

#endif
