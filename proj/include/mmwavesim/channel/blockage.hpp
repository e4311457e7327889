/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef MMWAVESIM_CHANNEL_BLOCKAGE_HPP
#define MMWAVESIM_CHANNEL_BLOCKAGE_HPP

#include <vector>

#include "mmwavesim/channel/fading.hpp"
#include "mmwavesim/channel/scenario.hpp"
#include "mmwavesim/core/rng.hpp"

namespace mmwavesim::channel {

enum class UeOrientation { Portrait, Landscape };

struct BlockingRegion {
  bool self = false;
  double center_az_rad = 0.0;
  double center_el_rad = 0.0;
  double span_az_rad = 0.0;
  double span_el_rad = 0.0;
  // Fixed attenuation for the self-blocking region; non-self regions use the
  // angular diffraction formula instead.
  double attenuation_db = 0.0;
  double angular_velocity_rad_s = 0.0;  // drift of non-self region centers

  bool contains(double az_rad, double el_rad) const;
};

// Model-A blocking geometry: one self-blocking region (30 dB) plus K
// non-self regions whose positions drift with the blocker speed.
struct BlockageState {
  std::vector<BlockingRegion> regions;
  UeOrientation orientation = UeOrientation::Portrait;
  double blocker_distance_m = 10.0;
};

BlockageState generate_blockage(const ScenarioParams& params,
                                const Scenario& scenario, int num_nonself,
                                double blocker_speed_mps,
                                UeOrientation orientation, RngStream& rng);

// Advances region centers by dt (self region stays attached to the UE).
void advance_blockage(BlockageState& state, double dt_s);

// Recomputes each cluster's blocked attenuation from its arrival angle.
// Called before any spatial-consistency recomputation of the coefficients.
ChannelState apply_blockage(const ChannelState& state,
                            const BlockageState& blockage,
                            double wavelength_m);

// Diffraction attenuation of a single region for a ray arriving inside it.
double region_attenuation_db(const BlockingRegion& region, double az_rad,
                             double el_rad, double wavelength_m,
                             double blocker_distance_m);

}  // namespace mmwavesim::channel

#endif
