/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "mmwavesim/traffic/source.hpp"

#include <stdexcept>

#include "mmwavesim/core/keyvalue.hpp"

namespace mmwavesim::traffic {

TrafficSpec parse_traffic_spec(const std::string& text) {
  // e.g. "poisson rate_pps=12500 size_b=100", "cbr rate_pps=1000 size_b=1200",
  //      "full_buffer size_b=1400", "aimd size_b=1400"
  auto tokens = split_tokens(text);
  if (tokens.empty()) throw std::runtime_error("empty traffic spec");
  TrafficSpec spec;
  if (tokens[0] == "poisson") {
    spec.kind = TrafficKind::Poisson;
  } else if (tokens[0] == "cbr") {
    spec.kind = TrafficKind::Cbr;
  } else if (tokens[0] == "full_buffer") {
    spec.kind = TrafficKind::FullBuffer;
    spec.packet_bytes = 1400;
  } else if (tokens[0] == "aimd") {
    spec.kind = TrafficKind::Aimd;
    spec.packet_bytes = 1400;
  } else {
    throw std::runtime_error("unknown traffic kind '" + tokens[0] +
                             "' (expected poisson, cbr, full_buffer, aimd)");
  }
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    auto eq = tokens[i].find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("traffic spec token '" + tokens[i] +
                               "' is not key=value");
    }
    const std::string key = tokens[i].substr(0, eq);
    const double value = std::stod(tokens[i].substr(eq + 1));
    if (key == "rate_pps") {
      spec.rate_pps = value;
    } else if (key == "rate_mbps") {
      spec.rate_pps = value * 1e6 / 8.0 / spec.packet_bytes;
    } else if (key == "size_b") {
      spec.packet_bytes = static_cast<std::uint32_t>(value);
    } else if (key == "ssthresh") {
      spec.cc_initial_ssthresh_pkts = value;
    } else {
      throw std::runtime_error("unknown traffic spec key '" + key + "'");
    }
  }
  if (spec.kind == TrafficKind::Poisson || spec.kind == TrafficKind::Cbr) {
    if (spec.rate_pps <= 0) {
      throw std::runtime_error("traffic rate must be positive");
    }
  }
  if (spec.packet_bytes == 0) {
    throw std::runtime_error("packet size must be positive");
  }
  return spec;
}

void ArrivalSource::start(TimeNs at, TimeNs stop_after) {
  stop_at_ = stop_after;
  // The first arrival sits one inter-arrival gap after the start, so zero
  // elapsed time produces zero packets.
  sim_.schedule(at, [this] { schedule_next(); });
}

void ArrivalSource::schedule_next() {
  TimeNs gap;
  if (spec_.kind == TrafficKind::Poisson) {
    gap = sec_to_ns(rng_.exponential(spec_.rate_pps));
  } else {
    gap = sec_to_ns(1.0 / spec_.rate_pps);
  }
  gap = std::max<TimeNs>(gap, 1);
  if (sim_.now() + gap >= stop_at_) return;
  sim_.schedule_in(gap, [this] {
    sink_(next_seq_++, spec_.packet_bytes);
    schedule_next();
  });
}

}  // namespace mmwavesim::traffic
