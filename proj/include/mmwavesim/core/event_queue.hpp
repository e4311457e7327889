/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef MMWAVESIM_CORE_EVENT_QUEUE_HPP
#define MMWAVESIM_CORE_EVENT_QUEUE_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <queue>
#include <vector>

#include "mmwavesim/core/time.hpp"

namespace mmwavesim {

using EventAction = std::function<void()>;

class EventQueue;

// Handle returned by EventQueue::push. Cancelling after dispatch (or a
// second time) is a no-op returning false.
class EventHandle {
 public:
  EventHandle() = default;

  bool cancel();
  bool pending() const {
    auto flag = flag_.lock();
    return flag && !*flag;
  }

 private:
  friend class EventQueue;
  EventHandle(EventQueue* queue, std::shared_ptr<bool> flag)
      : queue_(queue), flag_(flag) {}
  EventQueue* queue_ = nullptr;
  std::weak_ptr<bool> flag_;
};

// Time-ordered event set. Events with equal timestamps dispatch in
// insertion order via a monotonic sequence counter.
class EventQueue {
 public:
  EventHandle push(TimeNs at, EventAction action);

  bool empty() const { return live_size_ == 0; }
  std::size_t size() const { return live_size_; }
  TimeNs next_time() const;

  // Removes and runs the earliest live event; returns its timestamp.
  TimeNs pop_and_run();

  std::uint64_t scheduled_count() const { return scheduled_; }
  std::uint64_t dispatched_count() const { return dispatched_; }
  std::uint64_t cancelled_count() const { return cancelled_; }

 private:
  friend class EventHandle;
  void note_cancelled() {
    ++cancelled_;
    --live_size_;
  }
  void drop_cancelled_head() const;

  struct Entry {
    TimeNs at;
    std::uint64_t seq;
    // shared_ptr so entries stay cheap to move inside the heap.
    std::shared_ptr<EventAction> action;
    std::shared_ptr<bool> cancelled;
  };
  struct Later {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.at != b.at) return a.at > b.at;
      return a.seq > b.seq;
    }
  };

  mutable std::priority_queue<Entry, std::vector<Entry>, Later> heap_;
  std::uint64_t next_seq_ = 0;
  std::size_t live_size_ = 0;
  std::uint64_t scheduled_ = 0;
  std::uint64_t dispatched_ = 0;
  std::uint64_t cancelled_ = 0;
};

}  // namespace mmwavesim

#endif
