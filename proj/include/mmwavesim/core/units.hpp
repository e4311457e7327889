/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef MMWAVESIM_CORE_UNITS_HPP
#define MMWAVESIM_CORE_UNITS_HPP

#include <cmath>

namespace mmwavesim {

inline double db_to_lin(double db) { return std::pow(10.0, db / 10.0); }
inline double lin_to_db(double lin) { return 10.0 * std::log10(lin); }
inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watt_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

// Thermal noise density at 290 K, in W/Hz.
constexpr double kBoltzmann = 1.380649e-23;
constexpr double kNoiseTemperatureK = 290.0;
constexpr double kThermalNoiseDensityWPerHz = kBoltzmann * kNoiseTemperatureK;

constexpr double kSpeedOfLight = 2.99792458e8;  // m/s

}  // namespace mmwavesim

#endif
