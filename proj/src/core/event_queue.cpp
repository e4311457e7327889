/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "mmwavesim/core/event_queue.hpp"

#include <stdexcept>

namespace mmwavesim {

bool EventHandle::cancel() {
  auto flag = flag_.lock();
  if (!flag || *flag) return false;
  *flag = true;
  queue_->note_cancelled();
  return true;
}

EventHandle EventQueue::push(TimeNs at, EventAction action) {
  auto flag = std::make_shared<bool>(false);
  heap_.push(Entry{at, next_seq_++,
                   std::make_shared<EventAction>(std::move(action)), flag});
  ++scheduled_;
  ++live_size_;
  return EventHandle(this, std::move(flag));
}

void EventQueue::drop_cancelled_head() const {
  while (!heap_.empty() && *heap_.top().cancelled) {
    heap_.pop();
  }
}

TimeNs EventQueue::next_time() const {
  drop_cancelled_head();
  if (heap_.empty()) throw std::logic_error("EventQueue::next_time: empty queue");
  return heap_.top().at;
}

TimeNs EventQueue::pop_and_run() {
  drop_cancelled_head();
  if (heap_.empty()) throw std::logic_error("EventQueue::pop_and_run: empty queue");
  Entry entry = heap_.top();
  heap_.pop();
  --live_size_;
  ++dispatched_;
  (*entry.action)();
  return entry.at;
}

}  // namespace mmwavesim
