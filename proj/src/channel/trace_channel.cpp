/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "mmwavesim/channel/trace_channel.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mmwavesim/core/units.hpp"

namespace mmwavesim::channel {

namespace {

std::vector<double> parse_csv_numbers(const std::string& line, int lineno,
                                      const std::string& source) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) {
    try {
      out.push_back(std::stod(field));
    } catch (const std::exception&) {
      throw std::runtime_error(source + ":" + std::to_string(lineno) +
                               ": non-numeric field '" + field + "'");
    }
  }
  return out;
}

}  // namespace

ChannelTrace parse_channel_trace(const std::string& text,
                                 const std::string& source_name) {
  ChannelTrace trace;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line.rfind("t_s,n_paths", 0) != 0) {
        throw std::runtime_error(source_name + ":" + std::to_string(lineno) +
                                 ": expected header 't_s,n_paths,...'");
      }
      header_seen = true;
      continue;
    }
    auto nums = parse_csv_numbers(line, lineno, source_name);
    if (nums.size() < 2) {
      throw std::runtime_error(source_name + ":" + std::to_string(lineno) +
                               ": row needs at least t_s and n_paths");
    }
    TraceSample sample;
    sample.t_s = nums[0];
    const int n_paths = static_cast<int>(nums[1]);
    if (n_paths < 1 || nums.size() != 2 + 6 * static_cast<std::size_t>(n_paths)) {
      throw std::runtime_error(
          source_name + ":" + std::to_string(lineno) + ": expected " +
          std::to_string(2 + 6 * std::max(n_paths, 1)) + " fields for " +
          std::to_string(n_paths) + " paths, got " +
          std::to_string(nums.size()));
    }
    for (int p = 0; p < n_paths; ++p) {
      const std::size_t base = 2 + 6 * static_cast<std::size_t>(p);
      TracePath path;
      path.power_db = nums[base + 0];
      path.delay_s = nums[base + 1];
      path.aoa_az = nums[base + 2];
      path.aoa_el = nums[base + 3];
      path.aod_az = nums[base + 4];
      path.aod_el = nums[base + 5];
      sample.paths.push_back(path);
    }
    if (!trace.samples.empty() && sample.t_s <= trace.samples.back().t_s) {
      throw std::runtime_error(source_name + ":" + std::to_string(lineno) +
                               ": sample timestamps must be strictly increasing");
    }
    trace.samples.push_back(std::move(sample));
  }
  if (trace.samples.empty()) {
    throw std::runtime_error(source_name + ": trace contains no samples");
  }
  return trace;
}

ChannelTrace load_channel_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open channel trace: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_channel_trace(buf.str(), path);
}

ChannelState channel_from_trace(const ChannelTrace& trace, double t_s,
                                const beamforming::ArrayConfig& tx_array,
                                const beamforming::ArrayConfig& rx_array,
                                double wavelength_m) {
  if (t_s < trace.span_begin_s()) {
    throw std::runtime_error("channel_from_trace: t=" + std::to_string(t_s) +
                             " s precedes the first sample at " +
                             std::to_string(trace.span_begin_s()) + " s");
  }
  // Latest sample with timestamp <= t.
  const TraceSample* chosen = &trace.samples.front();
  for (const auto& s : trace.samples) {
    if (s.t_s <= t_s) {
      chosen = &s;
    } else {
      break;
    }
  }

  ChannelState state;
  state.absolute_power = true;
  state.condition = LosCondition::Los;
  state.wavelength_m = wavelength_m;
  state.tx_array = tx_array;
  state.rx_array = rx_array;
  state.generated_at = sec_to_ns(chosen->t_s);
  for (const auto& p : chosen->paths) {
    Cluster cl;
    cl.specular = true;  // one deterministic ray per trace path
    cl.power = db_to_lin(p.power_db);
    cl.delay_s = p.delay_s;
    cl.aoa_az = p.aoa_az;
    cl.aoa_el = p.aoa_el;
    cl.aod_az = p.aod_az;
    cl.aod_el = p.aod_el;
    Ray r;
    r.aoa_az = p.aoa_az;
    r.aoa_el = p.aoa_el;
    r.aod_az = p.aod_az;
    r.aod_el = p.aod_el;
    r.phase = 0.0;
    cl.rays.push_back(r);
    const auto rx = beamforming::element_response(rx_array, cl.aoa_az, cl.aoa_el);
    const auto tx = beamforming::element_response(tx_array, cl.aod_az, cl.aod_el);
    cl.coupling = rx * tx.adjoint();
    state.clusters.push_back(std::move(cl));
  }
  return state;
}

}  // namespace mmwavesim::channel
