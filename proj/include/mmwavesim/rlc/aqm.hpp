/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef MMWAVESIM_RLC_AQM_HPP
#define MMWAVESIM_RLC_AQM_HPP

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <string>

#include "mmwavesim/core/time.hpp"

namespace mmwavesim::rlc {

// One queued PDCP SDU awaiting first transmission.
struct Sdu {
  std::uint64_t payload_id = 0;  // opaque handle to the simulated packet
  std::uint32_t bytes = 0;
  TimeNs enqueue_time = 0;
};

enum class AqmKind { DropTail, Codel };

struct AqmConfig {
  AqmKind kind = AqmKind::DropTail;
  std::size_t droptail_limit_pkts = 50'000;
  TimeNs codel_target = ms_to_ns(5);
  TimeNs codel_interval = ms_to_ns(100);
};

// Transmission buffer with either Drop-tail admission or CoDel head drops.
// Drop-tail rejects at enqueue once the packet limit is reached; CoDel
// admits everything and drops at dequeue while the windowed-minimum sojourn
// stays above target.
class AqmQueue {
 public:
  explicit AqmQueue(const AqmConfig& cfg) : cfg_(cfg) {}

  // Returns false if the SDU was dropped at admission (drop-tail only).
  bool enqueue(const Sdu& sdu, TimeNs now);

  // Removes the next SDU honoring the CoDel drop schedule. Dropped SDUs are
  // reported through `on_drop` before the survivor is returned.
  std::optional<Sdu> dequeue(TimeNs now,
                             const std::function<void(const Sdu&)>& on_drop);

  const Sdu* peek() const { return queue_.empty() ? nullptr : &queue_.front(); }
  std::size_t size_pkts() const { return queue_.size(); }
  std::uint64_t size_bytes() const { return bytes_; }
  TimeNs head_sojourn(TimeNs now) const {
    return queue_.empty() ? 0 : now - queue_.front().enqueue_time;
  }
  std::uint64_t drop_count() const { return drops_; }
  const AqmConfig& config() const { return cfg_; }

 private:
  struct DodequeueResult {
    std::optional<Sdu> sdu;
    bool ok_to_drop = false;
  };
  DodequeueResult dodequeue(TimeNs now);
  TimeNs control_law(TimeNs t, std::uint32_t count) const;

  AqmConfig cfg_;
  std::deque<Sdu> queue_;
  std::uint64_t bytes_ = 0;
  std::uint64_t drops_ = 0;

  // CoDel state
  TimeNs first_above_time_ = 0;
  TimeNs drop_next_ = 0;
  std::uint32_t count_ = 0;
  std::uint32_t lastcount_ = 0;
  bool dropping_ = false;
};

}  // namespace mmwavesim::rlc

#endif
