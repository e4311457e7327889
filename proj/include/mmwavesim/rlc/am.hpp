/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef MMWAVESIM_RLC_AM_HPP
#define MMWAVESIM_RLC_AM_HPP

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "mmwavesim/rlc/aqm.hpp"

namespace mmwavesim::rlc {

// Fragment of one SDU carried inside an RLC PDU.
struct SduFragment {
  std::uint64_t payload_id = 0;
  std::uint32_t sdu_bytes = 0;    // full SDU length
  std::uint32_t offset = 0;       // fragment offset within the SDU
  std::uint32_t length = 0;
  bool is_last = false;           // fragment reaches the SDU end
  TimeNs sdu_enqueue_time = 0;
};

// One RLC PDU, or a subsegment of a previously transmitted PDU when the
// resegment flag is set.
struct RlcSegment {
  std::uint64_t sn = 0;
  std::uint32_t byte_offset = 0;   // of this (sub)segment within the PDU
  std::uint32_t payload_bytes = 0; // payload carried by this (sub)segment
  std::uint32_t original_bytes = 0;
  bool resegment_flag = false;
  bool is_last_subsegment = false;
  bool retransmitted = false;
  bool poll = false;
  TimeNs enqueue_time = 0;  // creation time of the original PDU
  // Full fragment map of the PDU (simulation metadata; receivers read it
  // once the byte range is complete).
  std::vector<SduFragment> fragments;

  std::uint32_t end_offset() const { return byte_offset + payload_bytes; }
};

struct StatusPdu {
  std::uint64_t ack_sn = 0;      // first SN not yet fully received
  std::uint64_t highest_sn = 0;  // highest SN seen (valid if any_seen)
  bool any_seen = false;
  std::vector<std::uint64_t> nacks;  // incomplete SNs below highest
};

// A PDCP-level SDU delivered upward by the receiver.
struct DeliveredSdu {
  std::uint64_t payload_id = 0;
  std::uint32_t bytes = 0;
  TimeNs sdu_enqueue_time = 0;
};

enum class RlcMode { Am, Um, Tm, Sm };

struct AmConfig {
  RlcMode mode = RlcMode::Am;
  AqmConfig aqm;
  TimeNs poll_retransmit_timeout = ms_to_ns(2);
  TimeNs reordering_timeout = ms_to_ns(1);
  int poll_every_pdus = 32;
  std::uint64_t tx_window = 4096;
  std::uint32_t header_per_segment = 2;
  std::uint32_t header_per_extra_sdu = 1;
  std::uint32_t min_grant_bytes = 4;  // header + at least one payload byte
};

// Transmitting side: AQM'd SDU queue, segmentation/concatenation into PDUs,
// retransmission queue served first with re-segmentation to fit the grant,
// status processing and poll supervision.
class AmTransmitter {
 public:
  explicit AmTransmitter(const AmConfig& cfg) : cfg_(cfg) {}

  // Admission through the AQM; returns false when dropped.
  bool enqueue_sdu(const Sdu& sdu, TimeNs now);

  // Serves the grant: retransmissions first (splitting the head segment
  // into flagged subsegments if needed), then new PDUs packed from queued
  // SDUs. AQM head drops happen here, at dequeue time.
  std::vector<RlcSegment> tx_opportunity(std::uint32_t bytes_granted, TimeNs now);

  void on_status(const StatusPdu& status, TimeNs now);

  // Poll supervision; emits a re-poll retransmission when the 2 ms timer
  // expires without a covering status.
  void on_timer_check(TimeNs now);

  // Buffer occupancy as advertised in BSRs (payload plus header estimate).
  std::uint64_t buffer_status_bytes() const;
  // Enqueue time of the oldest pending data (deadline scheduling input).
  std::optional<TimeNs> head_of_line_enqueue_time() const;

  const AqmQueue& queue() const { return queue_; }
  AqmQueue& queue() { return queue_; }
  std::uint64_t unacked_pdus() const { return pdu_store_.size(); }
  std::uint64_t retx_queue_bytes() const { return retx_bytes_; }

  using DropCallback = std::function<void(const Sdu&)>;
  void set_aqm_drop_callback(DropCallback cb) { on_aqm_drop_ = std::move(cb); }

  // Pulls everything pending (queued SDUs, unacknowledged PDUs) for lossless
  // forwarding during a handover or leg switch, clearing this entity.
  std::vector<Sdu> drain_for_forwarding(TimeNs now);

 private:
  struct StoredPdu {
    std::vector<SduFragment> fragments;
    std::uint32_t bytes = 0;
    TimeNs enqueue_time = 0;
  };
  struct RetxSlice {
    std::uint64_t sn = 0;
    std::uint32_t offset = 0;
    std::uint32_t length = 0;
  };

  RlcSegment make_pdu(std::uint32_t payload_budget, TimeNs now);
  void queue_retx(std::uint64_t sn);
  void maybe_set_poll(RlcSegment& seg, TimeNs now);

  AmConfig cfg_;
  AqmQueue queue_{cfg_.aqm};
  DropCallback on_aqm_drop_;

  // Head SDU partially packed into a previous PDU.
  std::optional<Sdu> head_sdu_;
  std::uint32_t head_offset_ = 0;

  std::uint64_t vt_next_ = 0;  // next fresh SN
  std::uint64_t vt_ack_ = 0;   // lowest unacknowledged SN
  std::map<std::uint64_t, StoredPdu> pdu_store_;
  std::deque<RetxSlice> retx_queue_;
  std::set<std::uint64_t> retx_pending_;  // SNs currently queued for retx
  std::uint64_t retx_bytes_ = 0;

  int pdus_since_poll_ = 0;
  bool poll_outstanding_ = false;
  std::uint64_t poll_sn_ = 0;
  TimeNs poll_deadline_ = 0;
};

// Receiving side: subsegment reassembly per SN, in-order delivery of SDUs,
// duplicate suppression, gap-driven status generation.
class AmReceiver {
 public:
  explicit AmReceiver(const AmConfig& cfg) : cfg_(cfg) {}

  // Feeds one received segment; returns SDUs that completed in order.
  std::vector<DeliveredSdu> receive_segment(const RlcSegment& seg, TimeNs now);

  // True when a status should be sent (poll received, reordering timer
  // fired, or a protocol error needs a retransmission).
  bool status_due(TimeNs now) const;
  StatusPdu make_status(TimeNs now);

  // UM housekeeping: skips past gaps once the reordering timer fires and
  // returns anything that became deliverable.
  std::vector<DeliveredSdu> on_timer_check(TimeNs now);

  std::uint64_t protocol_error_count() const { return protocol_errors_; }
  std::uint64_t delivered_count() const { return delivered_; }

 private:
  struct RxPdu {
    std::uint32_t original_bytes = 0;
    // received byte ranges, merged and sorted
    std::vector<std::pair<std::uint32_t, std::uint32_t>> ranges;
    std::vector<SduFragment> fragments;
    bool have_fragments = false;
    bool complete() const {
      return ranges.size() == 1 && ranges[0].first == 0 &&
             ranges[0].second == original_bytes;
    }
  };

  std::vector<DeliveredSdu> try_deliver(TimeNs now);

  AmConfig cfg_;
  std::uint64_t rx_next_ = 0;  // first SN not delivered
  std::map<std::uint64_t, RxPdu> pending_;
  // SDU reassembly across PDUs (in-order by construction).
  std::map<std::uint64_t, std::uint32_t> sdu_received_bytes_;
  bool poll_seen_ = false;
  bool error_retx_needed_ = false;
  TimeNs reordering_deadline_ = 0;
  bool reordering_armed_ = false;
  std::uint64_t protocol_errors_ = 0;
  std::uint64_t delivered_ = 0;
};

}  // namespace mmwavesim::rlc

#endif
