/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef MMWAVESIM_CHANNEL_PROPAGATION_HPP
#define MMWAVESIM_CHANNEL_PROPAGATION_HPP

#include <vector>

#include "mmwavesim/channel/geometry.hpp"
#include "mmwavesim/channel/scenario.hpp"
#include "mmwavesim/core/rng.hpp"

namespace mmwavesim::channel {

// LOS probability of the statistical model at a 2D distance.
double los_probability(const ScenarioParams& params, ScenarioKind kind,
                       double d2d_m);

// Resolves the LOS condition either statistically (scenario curve + draw)
// or geometrically (tx-rx segment against the obstacle list).
LosState determine_los(const Vec3& tx, const Vec3& rx,
                       const std::vector<Box>& obstacles, LosSource mode,
                       const ScenarioParams& params, const Scenario& scenario,
                       RngStream& rng);

// Distance-dependent pathloss in dB for the resolved condition.
// Deterministic in its inputs; throws if the geometry is below the model's
// validity range for the scenario.
double pathloss_db(const ScenarioParams& params, const Scenario& scenario,
                   const LosState& los, double d3d_m, double d2d_m);

// Additional outdoor-to-indoor penetration loss (low-loss building model).
double o2i_loss_db(const ScenarioParams& params, const Scenario& scenario,
                   double indoor_depth_m);

// Spatially correlated log-normal shadowing, advanced by the exponential
// autocorrelation R(dd) = exp(-dd/d_cor) over the 2D displacement.
struct ShadowingState {
  double value_db = 0.0;
  double last_x_m = 0.0;
  double last_y_m = 0.0;
  double sigma_db = 4.0;
  double d_cor_m = 37.0;
  bool initialized = false;
};

ShadowingState init_shadowing(double sigma_db, double d_cor_m, double x_m,
                              double y_m, RngStream& rng);
ShadowingState update_shadowing(const ShadowingState& state, double new_x_m,
                                double new_y_m, RngStream& rng);

}  // namespace mmwavesim::channel

#endif
