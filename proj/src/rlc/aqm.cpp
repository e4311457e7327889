/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "mmwavesim/rlc/aqm.hpp"

#include <cmath>

namespace mmwavesim::rlc {

bool AqmQueue::enqueue(const Sdu& sdu, TimeNs now) {
  (void)now;
  if (cfg_.kind == AqmKind::DropTail &&
      queue_.size() >= cfg_.droptail_limit_pkts) {
    ++drops_;
    return false;
  }
  queue_.push_back(sdu);
  bytes_ += sdu.bytes;
  return true;
}

AqmQueue::DodequeueResult AqmQueue::dodequeue(TimeNs now) {
  DodequeueResult r;
  if (queue_.empty()) {
    first_above_time_ = 0;
    return r;
  }
  r.sdu = queue_.front();
  queue_.pop_front();
  bytes_ -= r.sdu->bytes;

  const TimeNs sojourn = now - r.sdu->enqueue_time;
  if (sojourn < cfg_.codel_target || queue_.empty()) {
    first_above_time_ = 0;
  } else {
    if (first_above_time_ == 0) {
      first_above_time_ = now + cfg_.codel_interval;
    } else if (now >= first_above_time_) {
      r.ok_to_drop = true;
    }
  }
  return r;
}

TimeNs AqmQueue::control_law(TimeNs t, std::uint32_t count) const {
  return t + static_cast<TimeNs>(cfg_.codel_interval /
                                 std::sqrt(static_cast<double>(count)));
}

std::optional<Sdu> AqmQueue::dequeue(
    TimeNs now, const std::function<void(const Sdu&)>& on_drop) {
  if (cfg_.kind == AqmKind::DropTail) {
    if (queue_.empty()) return std::nullopt;
    Sdu sdu = queue_.front();
    queue_.pop_front();
    bytes_ -= sdu.bytes;
    return sdu;
  }

  DodequeueResult r = dodequeue(now);
  if (dropping_) {
    if (!r.ok_to_drop) {
      dropping_ = false;
    }
    while (dropping_ && now >= drop_next_) {
      if (r.sdu) {
        ++drops_;
        if (on_drop) on_drop(*r.sdu);
      }
      ++count_;
      r = dodequeue(now);
      if (!r.ok_to_drop) {
        dropping_ = false;
      } else {
        drop_next_ = control_law(drop_next_, count_);
      }
    }
  } else if (r.ok_to_drop) {
    if (r.sdu) {
      ++drops_;
      if (on_drop) on_drop(*r.sdu);
    }
    r = dodequeue(now);
    dropping_ = true;
    const std::uint32_t delta = count_ - lastcount_;
    count_ = (delta > 1 && now - drop_next_ < 16 * cfg_.codel_interval) ? delta
                                                                        : 1;
    drop_next_ = control_law(now, count_);
    lastcount_ = count_;
  }
  return r.sdu;
}

}  // namespace mmwavesim::rlc
