/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef MMWAVESIM_SCENARIO_METRICS_HPP
#define MMWAVESIM_SCENARIO_METRICS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mmwavesim/core/time.hpp"
#include "mmwavesim/traffic/packet.hpp"

namespace mmwavesim::scenario {

struct UeMetrics {
  std::uint32_t ue = 0;
  double rate_bps = 0.0;        // delivered IP rate
  double allocated_bps = 0.0;   // granted PHY rate
  double mean_latency_s = 0.0;
  std::uint64_t delivered = 0;
  std::uint64_t generated = 0;
};

struct MetricsReport {
  std::map<std::uint32_t, UeMetrics> per_ue;
  double cell_sum_rate_bps = 0.0;
  double mean_ue_rate_bps = 0.0;
  double worst5_rate_bps = 0.0;  // mean over the bottom 5% of per-UE means
  double max_ue_rate_bps = 0.0;
  double mean_latency_s = 0.0;
  double p50_latency_s = 0.0;
  double p95_latency_s = 0.0;
  double max_latency_s = 0.0;
  double jain_fairness = 0.0;    // (sum x)^2 / (n sum x^2)
  double utilization = 0.0;      // delivered IP rate / allocated PHY rate
  double dmr = 0.0;              // late plus undelivered over generated
  std::uint64_t generated = 0;
  std::uint64_t delivered = 0;
  std::uint64_t aqm_dropped = 0;
  std::uint64_t harq_lost = 0;
  std::uint64_t in_flight_at_end = 0;
  bool empty_trace_warning = false;

  std::string summary_line() const;
};

// Deterministic aggregation over the packet registry. `flow_to_ue` maps flow
// ids to UE ids; UEs present in `all_ues` but without deliveries count as
// zero-rate. `allocated_bytes` holds the PHY grants per UE.
MetricsReport compute_metrics(const traffic::PacketRegistry& packets,
                              const std::map<std::uint32_t, std::uint32_t>& flow_to_ue,
                              const std::vector<std::uint32_t>& all_ues,
                              const std::map<std::uint32_t, std::uint64_t>& allocated_bytes,
                              double duration_s, TimeNs deadline);

}  // namespace mmwavesim::scenario

#endif
