/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef MMWAVESIM_TRAFFIC_AIMD_HPP
#define MMWAVESIM_TRAFFIC_AIMD_HPP

#include <cstdint>
#include <optional>
#include <set>

#include "mmwavesim/core/time.hpp"

namespace mmwavesim::traffic {

enum class CcMode { SlowStart, Avoidance };

struct CcState {
  double cwnd_pkts = 1.0;
  double ssthresh_pkts = 1e9;
  CcMode mode = CcMode::SlowStart;
  double rtt_estimate_s = 0.05;
};

// Window-based AIMD congestion control with slow start, cumulative ACKs,
// triple-duplicate fast retransmit and a coarse retransmission timeout.
// A deliberately simple stand-in for a kernel TCP, used by the queue
// management studies.
class CongestionController {
 public:
  struct Config {
    TimeNs min_rto = ms_to_ns(200);
    double rto_rtt_multiplier = 4.0;
    int dupack_threshold = 3;
    double initial_ssthresh_pkts = 1e9;
  };

  CongestionController() : cfg_(Config{}) {}
  explicit CongestionController(Config cfg) : cfg_(cfg) {
    state_.ssthresh_pkts = cfg_.initial_ssthresh_pkts;
  }

  const CcState& state() const { return state_; }
  std::uint64_t send_next() const { return send_next_; }
  std::uint64_t cum_acked() const { return cum_acked_; }
  double in_flight() const {
    return static_cast<double>(send_next_ - cum_acked_);
  }
  bool can_send() const { return in_flight() < state_.cwnd_pkts; }
  std::uint64_t take_send_slot() { return send_next_++; }

  // Cumulative ACK processing; returns the sequence to fast-retransmit when
  // the duplicate threshold fires.
  std::optional<std::uint64_t> on_ack(std::uint64_t cum_seq, TimeNs now,
                                      TimeNs sent_time);

  // RTO check; returns the sequence to retransmit on expiry.
  std::optional<std::uint64_t> on_timer(TimeNs now);

  std::uint64_t loss_events() const { return loss_events_; }

 private:
  void enter_recovery(bool timeout);

  Config cfg_;
  CcState state_;
  std::uint64_t send_next_ = 0;
  std::uint64_t cum_acked_ = 0;
  int dupacks_ = 0;
  std::uint64_t recovery_end_ = 0;  // loss events are once per window
  std::uint64_t last_fast_retx_cum_ = UINT64_MAX;
  bool in_recovery_ = false;
  TimeNs last_progress_ = 0;
  std::uint64_t loss_events_ = 0;
};

// Receiver-side cumulative ACK tracking over an in-order-with-gaps stream.
class CumulativeAcker {
 public:
  struct DeliveryResult {
    std::uint64_t cum_ack = 0;  // highest contiguous sequence + 1
    bool first_delivery = false;  // counts toward goodput
  };

  DeliveryResult on_delivery(std::uint64_t seq);
  std::uint64_t cum() const { return cum_; }

 private:
  std::uint64_t cum_ = 0;
  std::set<std::uint64_t> above_;
};

}  // namespace mmwavesim::traffic

#endif
