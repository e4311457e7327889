/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef MMWAVESIM_CHANNEL_FADING_HPP
#define MMWAVESIM_CHANNEL_FADING_HPP

#include <Eigen/Dense>
#include <vector>

#include "mmwavesim/beamforming/array.hpp"
#include "mmwavesim/channel/geometry.hpp"
#include "mmwavesim/channel/propagation.hpp"
#include "mmwavesim/channel/scenario.hpp"
#include "mmwavesim/core/rng.hpp"
#include "mmwavesim/core/time.hpp"

namespace mmwavesim::channel {

constexpr int kRaysPerCluster = 20;
constexpr int kMaxClusters = 20;

struct Ray {
  double aoa_az = 0.0, aoa_el = 0.0;
  double aod_az = 0.0, aod_el = 0.0;
  double phase = 0.0;
};

struct Cluster {
  double delay_s = 0.0;
  double power = 0.0;  // linear fraction; statistical mode normalizes to 1
  double aoa_az = 0.0, aoa_el = 0.0;  // central angles
  double aod_az = 0.0, aod_el = 0.0;
  double blocked_attenuation_db = 0.0;
  double doppler_hz = 0.0;  // computed from the central arrival angle only
  double doppler_phase_accum_rad = 0.0;  // carried across consistency updates
  double power_shadow_db = 0.0;  // per-cluster shadowing draw, kept for updates
  bool specular = false;
  std::vector<Ray> rays;
  // Element-space coupling of this cluster, rx_elements x tx_elements,
  // excluding the sqrt(power) scale.
  Eigen::MatrixXcd coupling;
};

// Per-link small-scale channel snapshot.
struct ChannelState {
  std::vector<Cluster> clusters;
  LosCondition condition = LosCondition::Nlos;
  double k_factor_db = 0.0;
  double delay_spread_s = 0.0;
  double r_tau = 3.0;
  double wavelength_m = 0.0;
  TimeNs generated_at = 0;
  beamforming::ArrayConfig tx_array;
  beamforming::ArrayConfig rx_array;
  // Trace-driven states carry absolute path gains instead of unit-sum powers.
  bool absolute_power = false;

  double total_power() const;
  // Full channel matrix at simulated time t and frequency offset from the
  // carrier (rx_elements x tx_elements).
  Eigen::MatrixXcd matrix_at(TimeNs t, double freq_offset_hz = 0.0) const;
};

// Per-cluster scalars w_rx^H A_n w_tx for a fixed beam pair; evaluating a
// subband gain then costs one complex sum over clusters.
struct BeamCoupling {
  std::vector<std::complex<double>> cluster_terms;
  const ChannelState* state = nullptr;

  double gain_at(TimeNs t, double freq_offset_hz) const;
};

BeamCoupling couple_beams(const ChannelState& state,
                          const Eigen::VectorXcd& rx_weights,
                          const Eigen::VectorXcd& tx_weights);

struct LinkGeometry {
  Vec3 tx_position_m;
  Vec3 rx_position_m;
  Vec3 rx_velocity_mps;  // used for Doppler and spatial-consistency updates
};

// Draws a fresh cluster realization: exponential power-delay profile,
// per-cluster arrival/departure angles with 20 ray offsets each, vertical
// polarization only, per-cluster Doppler.
ChannelState generate_channel(const LinkGeometry& link,
                              const ScenarioParams& params,
                              const Scenario& scenario, const LosState& los,
                              const beamforming::ArrayConfig& tx_array,
                              const beamforming::ArrayConfig& rx_array,
                              TimeNs now, RngStream& rng);

// Advances cluster delays, powers and angles continuously as a function of
// the displacement accumulated over dt. Cluster identities are preserved;
// nothing is redrawn.
ChannelState advance_spatial_consistency(const ChannelState& state,
                                         double dt_s,
                                         const LinkGeometry& link);

}  // namespace mmwavesim::channel

#endif
