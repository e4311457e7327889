/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "mmwavesim/core/simulator.hpp"

#include <stdexcept>
#include <string>

namespace mmwavesim {

EventHandle Simulator::schedule(TimeNs at, EventAction action) {
  if (at < now_) {
    throw std::logic_error("Simulator::schedule: event at t=" +
                           std::to_string(at) + " ns is in the past (now=" +
                           std::to_string(now_) + " ns)");
  }
  return queue_.push(at, std::move(action));
}

void Simulator::run_until(TimeNs t_end) {
  while (!queue_.empty() && queue_.next_time() <= t_end) {
    // Advance the clock before dispatch so the action observes its own time.
    now_ = queue_.next_time();
    queue_.pop_and_run();
  }
  if (t_end > now_) now_ = t_end;
}

void Simulator::run_all() {
  while (!queue_.empty()) {
    now_ = queue_.next_time();
    queue_.pop_and_run();
  }
}

}  // namespace mmwavesim
