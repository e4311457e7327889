/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef MMWAVESIM_TRAFFIC_SOURCE_HPP
#define MMWAVESIM_TRAFFIC_SOURCE_HPP

#include <functional>
#include <string>

#include "mmwavesim/core/rng.hpp"
#include "mmwavesim/core/simulator.hpp"
#include "mmwavesim/traffic/packet.hpp"

namespace mmwavesim::traffic {

enum class TrafficKind { Poisson, Cbr, FullBuffer, Aimd };

struct TrafficSpec {
  TrafficKind kind = TrafficKind::Poisson;
  double rate_pps = 12'500.0;  // Poisson/CBR arrival rate
  std::uint32_t packet_bytes = 100;
  double cc_initial_ssthresh_pkts = 1e9;  // window-based sources only

  double offered_load_bps() const { return rate_pps * packet_bytes * 8.0; }
};

TrafficSpec parse_traffic_spec(const std::string& text);

// Open-loop arrival generator (Poisson or CBR). Each arrival invokes the
// sink with (flow, seq, bytes); the stack owns packet creation and routing.
class ArrivalSource {
 public:
  using Sink = std::function<void(std::uint64_t seq, std::uint32_t bytes)>;

  ArrivalSource(Simulator& sim, RngStream rng, const TrafficSpec& spec,
                Sink sink)
      : sim_(sim), rng_(std::move(rng)), spec_(spec), sink_(std::move(sink)) {}

  void start(TimeNs at, TimeNs stop_after);

 private:
  void schedule_next();

  Simulator& sim_;
  RngStream rng_;
  TrafficSpec spec_;
  Sink sink_;
  std::uint64_t next_seq_ = 0;
  TimeNs stop_at_ = 0;
};

}  // namespace mmwavesim::traffic

#endif
