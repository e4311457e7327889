/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "mmwavesim/traffic/aimd.hpp"

#include <algorithm>

namespace mmwavesim::traffic {

void CongestionController::enter_recovery(bool timeout) {
  state_.ssthresh_pkts = std::max(2.0, state_.cwnd_pkts / 2.0);
  state_.cwnd_pkts = timeout ? 1.0 : state_.ssthresh_pkts;
  state_.mode = timeout ? CcMode::SlowStart : CcMode::Avoidance;
  in_recovery_ = true;
  recovery_end_ = send_next_;
  dupacks_ = 0;
  ++loss_events_;
}

std::optional<std::uint64_t> CongestionController::on_ack(std::uint64_t cum_seq,
                                                          TimeNs now,
                                                          TimeNs sent_time) {
  if (sent_time >= 0) {
    const double sample = ns_to_sec(now - sent_time);
    state_.rtt_estimate_s = 0.875 * state_.rtt_estimate_s + 0.125 * sample;
  }
  if (cum_seq > cum_acked_) {
    const std::uint64_t newly = cum_seq - cum_acked_;
    cum_acked_ = cum_seq;
    dupacks_ = 0;
    last_progress_ = now;
    if (in_recovery_) {
      if (cum_acked_ >= recovery_end_) {
        in_recovery_ = false;
      } else {
        // Partial ACK: the next hole in a burst loss retransmits at once
        // instead of waiting out a timer per hole.
        return cum_acked_;
      }
    }
    if (state_.mode == CcMode::SlowStart) {
      state_.cwnd_pkts += static_cast<double>(newly);
      if (state_.cwnd_pkts >= state_.ssthresh_pkts) {
        state_.mode = CcMode::Avoidance;
      }
    } else {
      state_.cwnd_pkts += static_cast<double>(newly) / state_.cwnd_pkts;
    }
    return std::nullopt;
  }
  // Duplicate cumulative ACK: data above a hole keeps arriving. Duplicate
  // deliveries of our own retransmissions also echo back as dup ACKs, so a
  // given ACK point triggers fast retransmit at most once and only with
  // enough data outstanding to have produced genuine duplicates.
  ++dupacks_;
  if (dupacks_ >= cfg_.dupack_threshold && !in_recovery_ &&
      in_flight() > cfg_.dupack_threshold &&
      cum_acked_ != last_fast_retx_cum_) {
    last_fast_retx_cum_ = cum_acked_;
    enter_recovery(false);
    return cum_acked_;  // fast-retransmit the missing head
  }
  return std::nullopt;
}

std::optional<std::uint64_t> CongestionController::on_timer(TimeNs now) {
  if (send_next_ == cum_acked_) {
    last_progress_ = now;
    return std::nullopt;
  }
  const TimeNs rto =
      std::max(cfg_.min_rto,
               sec_to_ns(cfg_.rto_rtt_multiplier * state_.rtt_estimate_s));
  if (now - last_progress_ < rto) return std::nullopt;
  last_progress_ = now;
  enter_recovery(true);
  return cum_acked_;
}

CumulativeAcker::DeliveryResult CumulativeAcker::on_delivery(std::uint64_t seq) {
  DeliveryResult r;
  r.first_delivery = seq >= cum_ && above_.insert(seq).second;
  while (above_.count(cum_)) {
    above_.erase(cum_);
    ++cum_;
  }
  r.cum_ack = cum_;
  return r;
}

}  // namespace mmwavesim::traffic
