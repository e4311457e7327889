/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef MMWAVESIM_CORE_SIMULATOR_HPP
#define MMWAVESIM_CORE_SIMULATOR_HPP

#include "mmwavesim/core/event_queue.hpp"
#include "mmwavesim/core/time.hpp"

namespace mmwavesim {

// Single-threaded discrete-event engine. Not shareable across threads;
// parallelism comes from running independent processes with distinct seeds.
class Simulator {
 public:
  TimeNs now() const { return now_; }

  // Schedules `action` at absolute time `at`. Scheduling in the past is a
  // logic fault: it indicates a bug in the calling model, not bad input.
  EventHandle schedule(TimeNs at, EventAction action);
  EventHandle schedule_in(TimeNs delay, EventAction action) {
    return schedule(now_ + delay, std::move(action));
  }

  // Dispatches every event with timestamp <= t_end and advances the clock
  // to exactly t_end.
  void run_until(TimeNs t_end);

  // Dispatches until the queue drains.
  void run_all();

  const EventQueue& queue() const { return queue_; }

 private:
  EventQueue queue_;
  TimeNs now_ = 0;
};

}  // namespace mmwavesim

#endif
