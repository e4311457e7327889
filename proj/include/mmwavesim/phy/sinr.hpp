/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef MMWAVESIM_PHY_SINR_HPP
#define MMWAVESIM_PHY_SINR_HPP

#include <Eigen/Dense>
#include <vector>

#include "mmwavesim/channel/fading.hpp"
#include "mmwavesim/phy/error_model.hpp"
#include "mmwavesim/phy/frame.hpp"

namespace mmwavesim::phy {

// Desired link as seen by the victim receiver.
struct DesiredSignal {
  const channel::ChannelState* channel = nullptr;
  Eigen::VectorXcd tx_weights;
  Eigen::VectorXcd rx_weights;
  double tx_power_dbm = 30.0;
  double pathloss_db = 0.0;  // zero for trace-driven absolute-gain channels
};

// One active co-channel transmission interfering at the victim. The gain
// pairs the interferer's own transmit beam with the victim's receive beam
// over the interferer-to-victim channel; a wideband gain is used. Both
// weight vectors are explicit so the coupling matches the channel state's
// array dimensions in either link direction.
struct Interferer {
  const channel::ChannelState* channel_to_victim = nullptr;
  Eigen::VectorXcd rx_weights;  // victim-side weights over this channel
  Eigen::VectorXcd tx_weights;  // the interferer's serving beam
  double tx_power_dbm = 30.0;
  double pathloss_db = 0.0;
};

// Per-subband SINR: frequency-selective desired gain, wideband interference
// gains, thermal noise BW*N0 scaled by the receiver noise figure.
SinrReport compute_sinr(const DesiredSignal& desired,
                        const std::vector<Interferer>& interferers,
                        double noise_figure_db, const FrameConfig& cfg,
                        TimeNs now);

// Interference-to-noise ratio diagnostic for a victim receiver.
double compute_inr_db(const std::vector<Interferer>& interferers,
                      double noise_figure_db, const FrameConfig& cfg,
                      TimeNs now);

double noise_power_watt(double bandwidth_hz, double noise_figure_db);

}  // namespace mmwavesim::phy

#endif
