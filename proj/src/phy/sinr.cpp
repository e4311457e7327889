/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "mmwavesim/phy/sinr.hpp"

#include <stdexcept>

#include "mmwavesim/core/units.hpp"

namespace mmwavesim::phy {

double noise_power_watt(double bandwidth_hz, double noise_figure_db) {
  return kThermalNoiseDensityWPerHz * bandwidth_hz * db_to_lin(noise_figure_db);
}

namespace {

double interference_watt_per_subband(const std::vector<Interferer>& interferers,
                                     const FrameConfig& cfg, TimeNs now) {
  double total = 0.0;
  for (const auto& i : interferers) {
    if (!i.channel_to_victim) {
      throw std::invalid_argument("interferer without channel state");
    }
    const auto coupling =
        channel::couple_beams(*i.channel_to_victim, i.rx_weights,
                              i.tx_weights);
    const double gain = coupling.gain_at(now, 0.0);  // wideband
    total += dbm_to_watt(i.tx_power_dbm) / db_to_lin(i.pathloss_db) * gain /
             cfg.num_subbands;
  }
  return total;
}

}  // namespace

SinrReport compute_sinr(const DesiredSignal& desired,
                        const std::vector<Interferer>& interferers,
                        double noise_figure_db, const FrameConfig& cfg,
                        TimeNs now) {
  if (!desired.channel) {
    throw std::invalid_argument("compute_sinr: missing desired channel state");
  }
  SinrReport report;
  report.t = now;
  report.per_subband_linear.resize(cfg.num_subbands);

  const double tx_watt_per_subband =
      dbm_to_watt(desired.tx_power_dbm) / db_to_lin(desired.pathloss_db) /
      cfg.num_subbands;
  const double noise_per_subband =
      noise_power_watt(cfg.subband_width_hz, noise_figure_db);
  const double interference_per_subband =
      interference_watt_per_subband(interferers, cfg, now);

  const auto coupling = channel::couple_beams(*desired.channel,
                                              desired.rx_weights,
                                              desired.tx_weights);
  for (int k = 0; k < cfg.num_subbands; ++k) {
    const double gain = coupling.gain_at(now, cfg.subband_offset_hz(k));
    report.per_subband_linear[k] =
        tx_watt_per_subband * gain /
        (interference_per_subband + noise_per_subband);
  }
  return report;
}

double compute_inr_db(const std::vector<Interferer>& interferers,
                      double noise_figure_db, const FrameConfig& cfg,
                      TimeNs now) {
  const double interference =
      interference_watt_per_subband(interferers, cfg, now);
  const double noise = noise_power_watt(cfg.subband_width_hz, noise_figure_db);
  return lin_to_db(interference / noise);
}

}  // namespace mmwavesim::phy
