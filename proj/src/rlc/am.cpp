/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "mmwavesim/rlc/am.hpp"

#include <algorithm>
#include <stdexcept>

namespace mmwavesim::rlc {

bool AmTransmitter::enqueue_sdu(const Sdu& sdu, TimeNs now) {
  if (cfg_.mode == RlcMode::Tm || cfg_.mode == RlcMode::Sm) {
    return queue_.enqueue(sdu, now);
  }
  if (!queue_.enqueue(sdu, now)) {
    if (on_aqm_drop_) on_aqm_drop_(sdu);
    return false;
  }
  return true;
}

std::uint64_t AmTransmitter::buffer_status_bytes() const {
  std::uint64_t bytes = queue_.size_bytes() +
                        queue_.size_pkts() * cfg_.header_per_extra_sdu;
  if (head_sdu_) bytes += head_sdu_->bytes - head_offset_;
  bytes += retx_bytes_;
  if (bytes > 0) bytes += cfg_.header_per_segment;
  return bytes;
}

std::optional<TimeNs> AmTransmitter::head_of_line_enqueue_time() const {
  std::optional<TimeNs> t;
  for (const auto& slice : retx_queue_) {
    auto it = pdu_store_.find(slice.sn);
    if (it != pdu_store_.end()) {
      t = t ? std::min(*t, it->second.enqueue_time) : it->second.enqueue_time;
      break;  // the queue is served in order; the head bounds the rest
    }
  }
  if (head_sdu_) {
    t = t ? std::min(*t, head_sdu_->enqueue_time) : head_sdu_->enqueue_time;
  } else if (const Sdu* head = queue_.peek()) {
    t = t ? std::min(*t, head->enqueue_time) : head->enqueue_time;
  }
  return t;
}

void AmTransmitter::maybe_set_poll(RlcSegment& seg, TimeNs now) {
  ++pdus_since_poll_;
  const bool drained = !head_sdu_ && queue_.size_pkts() == 0 &&
                       retx_queue_.empty();
  if (drained || pdus_since_poll_ >= cfg_.poll_every_pdus) {
    seg.poll = true;
    pdus_since_poll_ = 0;
    poll_outstanding_ = true;
    poll_sn_ = seg.sn;
    poll_deadline_ = now + cfg_.poll_retransmit_timeout;
  }
}

RlcSegment AmTransmitter::make_pdu(std::uint32_t payload_budget, TimeNs now) {
  RlcSegment seg;
  seg.sn = vt_next_++;
  seg.enqueue_time = now;
  std::uint32_t used = 0;
  int sdus_packed = 0;
  while (used < payload_budget) {
    if (!head_sdu_) {
      // Charge the concatenation header before committing to another SDU.
      const std::uint32_t extra =
          sdus_packed > 0 ? cfg_.header_per_extra_sdu : 0;
      if (used + extra + 1 > payload_budget) break;
      auto next = queue_.dequeue(now, on_aqm_drop_);
      if (!next) break;
      head_sdu_ = *next;
      head_offset_ = 0;
      used += extra;
    }
    const std::uint32_t remaining_sdu = head_sdu_->bytes - head_offset_;
    const std::uint32_t take = std::min(remaining_sdu, payload_budget - used);
    if (take == 0) break;
    SduFragment frag;
    frag.payload_id = head_sdu_->payload_id;
    frag.sdu_bytes = head_sdu_->bytes;
    frag.offset = head_offset_;
    frag.length = take;
    frag.is_last = head_offset_ + take == head_sdu_->bytes;
    frag.sdu_enqueue_time = head_sdu_->enqueue_time;
    seg.fragments.push_back(frag);
    used += take;
    head_offset_ += take;
    ++sdus_packed;
    if (frag.is_last) {
      head_sdu_.reset();
      head_offset_ = 0;
    }
  }
  seg.byte_offset = 0;
  seg.payload_bytes = used;
  seg.original_bytes = used;
  seg.resegment_flag = false;
  seg.is_last_subsegment = true;
  if (used > 0) {
    pdu_store_[seg.sn] = StoredPdu{seg.fragments, used, now};
  } else {
    --vt_next_;  // nothing packed, SN not consumed
  }
  return seg;
}

std::vector<RlcSegment> AmTransmitter::tx_opportunity(
    std::uint32_t bytes_granted, TimeNs now) {
  std::vector<RlcSegment> out;
  if (cfg_.mode == RlcMode::Sm) {
    // Saturation stub: a single full-size padding-free segment.
    RlcSegment seg;
    seg.sn = vt_next_++;
    seg.payload_bytes = bytes_granted > cfg_.header_per_segment
                            ? bytes_granted - cfg_.header_per_segment
                            : 0;
    seg.original_bytes = seg.payload_bytes;
    seg.enqueue_time = now;
    out.push_back(seg);
    return out;
  }
  if (bytes_granted < cfg_.min_grant_bytes) return out;
  std::uint32_t budget = bytes_granted;

  // Retransmissions drain first; an oversized head segment is split into
  // subsegments with the resegment flag set.
  while (!retx_queue_.empty() && budget > cfg_.header_per_segment) {
    RetxSlice& slice = retx_queue_.front();
    auto it = pdu_store_.find(slice.sn);
    if (it == pdu_store_.end()) {
      // Acknowledged while queued.
      retx_bytes_ -= std::min<std::uint64_t>(retx_bytes_, slice.length);
      retx_pending_.erase(slice.sn);
      retx_queue_.pop_front();
      continue;
    }
    const std::uint32_t payload_budget = budget - cfg_.header_per_segment;
    const std::uint32_t take = std::min(slice.length, payload_budget);
    RlcSegment seg;
    seg.sn = slice.sn;
    seg.byte_offset = slice.offset;
    seg.payload_bytes = take;
    seg.original_bytes = it->second.bytes;
    seg.enqueue_time = it->second.enqueue_time;
    seg.fragments = it->second.fragments;
    seg.resegment_flag = take < it->second.bytes;
    seg.is_last_subsegment = slice.offset + take == it->second.bytes;
    seg.retransmitted = true;
    budget -= cfg_.header_per_segment + take;
    retx_bytes_ -= std::min<std::uint64_t>(retx_bytes_, take);
    if (take == slice.length) {
      retx_pending_.erase(slice.sn);
      retx_queue_.pop_front();
    } else {
      slice.offset += take;
      slice.length -= take;
    }
    maybe_set_poll(seg, now);
    out.push_back(std::move(seg));
  }

  // New data, one PDU packing SDU fragments in order.
  if (budget > cfg_.header_per_segment &&
      vt_next_ < vt_ack_ + cfg_.tx_window &&
      (head_sdu_ || queue_.size_pkts() > 0)) {
    RlcSegment seg = make_pdu(budget - cfg_.header_per_segment, now);
    if (seg.payload_bytes > 0) {
      if (cfg_.mode == RlcMode::Am) maybe_set_poll(seg, now);
      out.push_back(std::move(seg));
    }
  }
  return out;
}

void AmTransmitter::queue_retx(std::uint64_t sn) {
  if (retx_pending_.count(sn)) return;
  auto it = pdu_store_.find(sn);
  if (it == pdu_store_.end()) return;
  retx_queue_.push_back(RetxSlice{sn, 0, it->second.bytes});
  retx_pending_.insert(sn);
  retx_bytes_ += it->second.bytes;
}

void AmTransmitter::on_status(const StatusPdu& status, TimeNs now) {
  if (cfg_.mode != RlcMode::Am) return;
  // Everything below ack_sn is confirmed; within [ack_sn, highest] only the
  // NACKed SNs are outstanding.
  for (auto it = pdu_store_.begin(); it != pdu_store_.end();) {
    const std::uint64_t sn = it->first;
    bool confirmed = sn < status.ack_sn;
    if (!confirmed && status.any_seen && sn <= status.highest_sn) {
      confirmed = std::find(status.nacks.begin(), status.nacks.end(), sn) ==
                  status.nacks.end();
    }
    if (confirmed) {
      it = pdu_store_.erase(it);
    } else {
      ++it;
    }
  }
  vt_ack_ = std::max(vt_ack_, status.ack_sn);
  for (std::uint64_t sn : status.nacks) queue_retx(sn);
  if (poll_outstanding_ &&
      (status.ack_sn > poll_sn_ ||
       std::find(status.nacks.begin(), status.nacks.end(), poll_sn_) !=
           status.nacks.end())) {
    poll_outstanding_ = false;
  }
  (void)now;
}

void AmTransmitter::on_timer_check(TimeNs now) {
  if (cfg_.mode != RlcMode::Am) return;
  if (poll_outstanding_ && now >= poll_deadline_) {
    // Poll retransmission: resend the highest unacknowledged PDU.
    if (!pdu_store_.empty()) {
      queue_retx(pdu_store_.rbegin()->first);
    }
    poll_deadline_ = now + cfg_.poll_retransmit_timeout;
  }
}

std::vector<Sdu> AmTransmitter::drain_for_forwarding(TimeNs now) {
  std::vector<Sdu> out;
  // Unacknowledged PDUs first, oldest SN first, de-duplicating SDUs split
  // across PDUs by payload id.
  std::set<std::uint64_t> seen;
  for (const auto& [sn, pdu] : pdu_store_) {
    for (const auto& frag : pdu.fragments) {
      if (seen.insert(frag.payload_id).second) {
        out.push_back(Sdu{frag.payload_id, frag.sdu_bytes,
                          frag.sdu_enqueue_time});
      }
    }
  }
  if (head_sdu_ && seen.insert(head_sdu_->payload_id).second) {
    out.push_back(*head_sdu_);
  }
  while (auto sdu = queue_.dequeue(now, nullptr)) {
    if (seen.insert(sdu->payload_id).second) out.push_back(*sdu);
  }
  head_sdu_.reset();
  head_offset_ = 0;
  pdu_store_.clear();
  retx_queue_.clear();
  retx_pending_.clear();
  retx_bytes_ = 0;
  poll_outstanding_ = false;
  return out;
}

std::vector<DeliveredSdu> AmReceiver::receive_segment(const RlcSegment& seg,
                                                      TimeNs now) {
  if (seg.poll) poll_seen_ = true;
  if (seg.sn < rx_next_) return {};  // duplicate of delivered data

  RxPdu& pdu = pending_[seg.sn];
  if (pdu.original_bytes == 0) pdu.original_bytes = seg.original_bytes;
  if (pdu.original_bytes != seg.original_bytes) {
    // Inconsistent subsegments: discard the whole SN and ask again.
    ++protocol_errors_;
    pending_.erase(seg.sn);
    error_retx_needed_ = true;
    return {};
  }
  if (!pdu.have_fragments && !seg.fragments.empty()) {
    pdu.fragments = seg.fragments;
    pdu.have_fragments = true;
  }

  // Union of received byte ranges. Overlaps from re-segmented
  // retransmissions are consistent by construction and merge silently;
  // duplicates vanish.
  pdu.ranges.push_back({seg.byte_offset, seg.end_offset()});
  std::sort(pdu.ranges.begin(), pdu.ranges.end());
  std::vector<std::pair<std::uint32_t, std::uint32_t>> merged;
  for (const auto& r : pdu.ranges) {
    if (!merged.empty() && merged.back().second >= r.first) {
      merged.back().second = std::max(merged.back().second, r.second);
    } else {
      merged.push_back(r);
    }
  }
  pdu.ranges = std::move(merged);

  auto delivered = try_deliver(now);

  // Arm the reordering timer when a gap blocks delivery.
  const bool gap = !pending_.empty() &&
                   (pending_.begin()->first > rx_next_ ||
                    !pending_.begin()->second.complete());
  if (gap && !reordering_armed_) {
    reordering_armed_ = true;
    reordering_deadline_ = now + cfg_.reordering_timeout;
  } else if (!gap) {
    reordering_armed_ = false;
  }
  return delivered;
}

std::vector<DeliveredSdu> AmReceiver::try_deliver(TimeNs now) {
  (void)now;
  std::vector<DeliveredSdu> out;
  while (!pending_.empty()) {
    auto it = pending_.begin();
    if (it->first > rx_next_) break;
    if (!it->second.complete()) break;
    rx_next_ = it->first + 1;
    for (const auto& frag : it->second.fragments) {
      auto& got = sdu_received_bytes_[frag.payload_id];
      got += frag.length;
      if (frag.is_last && got == frag.sdu_bytes) {
        out.push_back(
            DeliveredSdu{frag.payload_id, frag.sdu_bytes, frag.sdu_enqueue_time});
        sdu_received_bytes_.erase(frag.payload_id);
        ++delivered_;
      }
    }
    pending_.erase(it);
  }
  return out;
}

std::vector<DeliveredSdu> AmReceiver::on_timer_check(TimeNs now) {
  // UM has no ARQ: a fired reordering timer skips past missing data.
  if (cfg_.mode != RlcMode::Um || !reordering_armed_ ||
      now < reordering_deadline_) {
    return {};
  }
  reordering_armed_ = false;
  std::vector<DeliveredSdu> out;
  while (!pending_.empty()) {
    auto it = pending_.begin();
    if (!it->second.complete()) {
      pending_.erase(it);
      continue;
    }
    rx_next_ = it->first;
    auto delivered = try_deliver(now);
    out.insert(out.end(), delivered.begin(), delivered.end());
    if (!pending_.empty() && !pending_.begin()->second.complete()) continue;
    break;
  }
  if (!pending_.empty()) {
    reordering_armed_ = true;
    reordering_deadline_ = now + cfg_.reordering_timeout;
  }
  return out;
}

bool AmReceiver::status_due(TimeNs now) const {
  if (cfg_.mode != RlcMode::Am) return false;
  if (poll_seen_ || error_retx_needed_) return true;
  return reordering_armed_ && now >= reordering_deadline_;
}

StatusPdu AmReceiver::make_status(TimeNs now) {
  StatusPdu status;
  status.ack_sn = rx_next_;
  if (!pending_.empty()) {
    status.any_seen = true;
    status.highest_sn = pending_.rbegin()->first;
    // First incomplete SN bounds the cumulative ack.
    std::uint64_t expect = rx_next_;
    for (const auto& [sn, pdu] : pending_) {
      for (std::uint64_t missing = expect; missing < sn; ++missing) {
        status.nacks.push_back(missing);
      }
      if (!pdu.complete()) status.nacks.push_back(sn);
      expect = sn + 1;
    }
  }
  poll_seen_ = false;
  error_retx_needed_ = false;
  if (reordering_armed_ && now >= reordering_deadline_) {
    reordering_deadline_ = now + cfg_.reordering_timeout;
  }
  return status;
}

}  // namespace mmwavesim::rlc
