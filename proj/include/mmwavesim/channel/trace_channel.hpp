/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef MMWAVESIM_CHANNEL_TRACE_CHANNEL_HPP
#define MMWAVESIM_CHANNEL_TRACE_CHANNEL_HPP

#include <string>
#include <vector>

#include "mmwavesim/channel/fading.hpp"

namespace mmwavesim::channel {

struct TracePath {
  double power_db = 0.0;  // absolute received path gain
  double delay_s = 0.0;
  double aoa_az = 0.0, aoa_el = 0.0;
  double aod_az = 0.0, aod_el = 0.0;
};

struct TraceSample {
  double t_s = 0.0;
  std::vector<TracePath> paths;
};

// Time-ordered channel samples loaded from a trace file. Row format:
//   t_s,n_paths[,power_db,delay_s,aoa_az,aoa_el,aod_az,aod_el]*n_paths
struct ChannelTrace {
  std::vector<TraceSample> samples;

  double span_begin_s() const { return samples.front().t_s; }
  double span_end_s() const { return samples.back().t_s; }
};

ChannelTrace load_channel_trace(const std::string& path);
ChannelTrace parse_channel_trace(const std::string& text,
                                 const std::string& source_name);

// Builds the state from the latest sample with timestamp <= t (zero-order
// hold). Trace powers are absolute received-path gains: the statistical
// pathloss/shadowing/fading generation is bypassed entirely.
ChannelState channel_from_trace(const ChannelTrace& trace, double t_s,
                                const beamforming::ArrayConfig& tx_array,
                                const beamforming::ArrayConfig& rx_array,
                                double wavelength_m);

}  // namespace mmwavesim::channel

#endif
