/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include <doctest.h>

#include <map>
#include <vector>

#include "mmwavesim/core/rng.hpp"
#include "mmwavesim/rlc/am.hpp"

using namespace mmwavesim;
using namespace mmwavesim::rlc;

namespace {

Sdu make_sdu(std::uint64_t id, std::uint32_t bytes, TimeNs t) {
  return Sdu{id, bytes, t};
}

AmConfig am_config() {
  AmConfig cfg;
  cfg.aqm.kind = AqmKind::DropTail;
  cfg.aqm.droptail_limit_pkts = 50'000;
  return cfg;
}

}  // namespace

TEST_CASE("droptail admits up to the packet limit and drops beyond") {
  AqmConfig cfg;
  cfg.kind = AqmKind::DropTail;
  cfg.droptail_limit_pkts = 50'000;
  AqmQueue q(cfg);
  for (std::uint64_t i = 0; i < 50'000; ++i) {
    CHECK(q.enqueue(make_sdu(i, 100, 0), 0));
  }
  CHECK(q.size_pkts() == 50'000);
  CHECK_FALSE(q.enqueue(make_sdu(99, 100, 0), 0));
  CHECK(q.drop_count() == 1);
}

TEST_CASE("codel never drops while sojourn stays under target") {
  AqmConfig cfg;
  cfg.kind = AqmKind::Codel;
  AqmQueue q(cfg);
  TimeNs now = 0;
  int dropped = 0;
  auto on_drop = [&](const Sdu&) { ++dropped; };
  // Head sojourn of 1 ms, well under the 5 ms target.
  for (int i = 0; i < 2000; ++i) {
    CHECK(q.enqueue(make_sdu(i, 100, now), now));
    now += us_to_ns(100);
    if (i % 2 == 1) {
      (void)q.dequeue(now, on_drop);
      (void)q.dequeue(now, on_drop);
    }
  }
  CHECK(dropped == 0);
  CHECK(q.drop_count() == 0);
}

TEST_CASE("codel enters dropping when sojourn exceeds target over an interval") {
  AqmConfig cfg;
  cfg.kind = AqmKind::Codel;
  AqmQueue q(cfg);
  TimeNs now = 0;
  // Saturate: enqueue much faster than dequeue so head sojourn > 5 ms.
  for (int i = 0; i < 5000; ++i) {
    q.enqueue(make_sdu(i, 100, now), now);
    now += us_to_ns(10);
  }
  int dropped = 0;
  auto on_drop = [&](const Sdu&) { ++dropped; };
  // Drain slowly for > 100 ms of simulated time.
  for (int i = 0; i < 1000; ++i) {
    now += us_to_ns(200);
    (void)q.dequeue(now, on_drop);
  }
  CHECK(dropped > 0);
  CHECK(q.drop_count() == static_cast<std::uint64_t>(dropped));
}

TEST_CASE("empty codel queue cannot drop") {
  AqmConfig cfg;
  cfg.kind = AqmKind::Codel;
  AqmQueue q(cfg);
  CHECK(q.enqueue(make_sdu(1, 100, 0), 0));
  int dropped = 0;
  auto got = q.dequeue(1000, [&](const Sdu&) { ++dropped; });
  REQUIRE(got.has_value());
  CHECK(dropped == 0);
}

TEST_CASE("tx opportunity packs SDUs in order within the grant") {
  AmTransmitter tx(am_config());
  tx.enqueue_sdu(make_sdu(1, 300, 0), 0);
  tx.enqueue_sdu(make_sdu(2, 300, 0), 0);
  tx.enqueue_sdu(make_sdu(3, 300, 0), 0);
  auto segs = tx.tx_opportunity(1000, 10);
  REQUIRE(segs.size() == 1);
  const auto& seg = segs.front();
  // 2 B segment header + 2 concatenation bytes + 900 payload <= 1000.
  CHECK(seg.payload_bytes <= 998);
  REQUIRE(seg.fragments.size() == 3);
  CHECK(seg.fragments[0].payload_id == 1);
  CHECK(seg.fragments[1].payload_id == 2);
  CHECK(seg.fragments[2].payload_id == 3);
  CHECK(seg.fragments[2].is_last);
}

TEST_CASE("grant larger than all buffered data empties the queues") {
  AmTransmitter tx(am_config());
  tx.enqueue_sdu(make_sdu(1, 500, 0), 0);
  tx.enqueue_sdu(make_sdu(2, 200, 0), 0);
  auto segs = tx.tx_opportunity(10'000, 10);
  REQUIRE(segs.size() == 1);
  CHECK(tx.queue().size_pkts() == 0);
  CHECK(tx.buffer_status_bytes() == 0);
}

TEST_CASE("grant below the header minimum emits nothing") {
  AmTransmitter tx(am_config());
  tx.enqueue_sdu(make_sdu(1, 500, 0), 0);
  CHECK(tx.tx_opportunity(2, 10).empty());
}

TEST_CASE("oversized retransmission is split with the resegment flag") {
  AmConfig cfg = am_config();
  AmTransmitter tx(cfg);
  tx.enqueue_sdu(make_sdu(1, 998, 0), 0);
  auto segs = tx.tx_opportunity(1000, 10);
  REQUIRE(segs.size() == 1);
  const std::uint64_t sn = segs[0].sn;
  CHECK(segs[0].payload_bytes == 998);

  // NACK the PDU, then offer a 400-byte opportunity.
  StatusPdu status;
  status.ack_sn = 0;
  status.any_seen = true;
  status.highest_sn = sn;
  status.nacks = {sn};
  tx.on_status(status, us_to_ns(100));

  auto part1 = tx.tx_opportunity(400, us_to_ns(200));
  REQUIRE(part1.size() == 1);
  CHECK(part1[0].sn == sn);
  CHECK(part1[0].resegment_flag);
  CHECK_FALSE(part1[0].is_last_subsegment);
  CHECK(part1[0].byte_offset == 0);
  CHECK(part1[0].payload_bytes == 398);  // 400 minus the 2-byte header

  // The remainder stays queued for the next opportunity.
  auto part2 = tx.tx_opportunity(10'000, us_to_ns(300));
  REQUIRE(part2.size() >= 1);
  CHECK(part2[0].sn == sn);
  CHECK(part2[0].resegment_flag);
  CHECK(part2[0].is_last_subsegment);
  CHECK(part2[0].byte_offset == 398);
  CHECK(part2[0].payload_bytes == 600);
}

TEST_CASE("retransmissions drain before new data in a shared grant") {
  AmConfig cfg = am_config();
  AmTransmitter tx(cfg);
  tx.enqueue_sdu(make_sdu(1, 200, 0), 0);
  auto first = tx.tx_opportunity(300, 10);
  REQUIRE(first.size() == 1);
  StatusPdu status;
  status.ack_sn = 0;
  status.any_seen = true;
  status.highest_sn = first[0].sn;
  status.nacks = {first[0].sn};
  tx.on_status(status, 20);
  tx.enqueue_sdu(make_sdu(2, 200, 20), 20);
  auto mixed = tx.tx_opportunity(10'000, 30);
  REQUIRE(mixed.size() == 2);
  CHECK(mixed[0].sn == first[0].sn);       // the retransmission leads
  CHECK(mixed[1].fragments[0].payload_id == 2);
}

TEST_CASE("receiver reassembles subsegments and delivers in order") {
  AmConfig cfg = am_config();
  AmReceiver rx(cfg);
  RlcSegment a;
  a.sn = 0;
  a.byte_offset = 0;
  a.payload_bytes = 400;
  a.original_bytes = 1000;
  a.resegment_flag = true;
  a.is_last_subsegment = false;
  a.fragments = {SduFragment{7, 1000, 0, 1000, true, 0}};
  CHECK(rx.receive_segment(a, 10).empty());

  RlcSegment b = a;
  b.byte_offset = 400;
  b.payload_bytes = 600;
  b.is_last_subsegment = true;
  auto delivered = rx.receive_segment(b, 20);
  REQUIRE(delivered.size() == 1);
  CHECK(delivered[0].payload_id == 7);
  CHECK(delivered[0].bytes == 1000);
}

TEST_CASE("non-resegmented complete segment delivers immediately") {
  AmReceiver rx(am_config());
  RlcSegment seg;
  seg.sn = 0;
  seg.payload_bytes = 500;
  seg.original_bytes = 500;
  seg.fragments = {SduFragment{1, 500, 0, 500, true, 0}};
  CHECK(rx.receive_segment(seg, 10).size() == 1);
  // A duplicate of the delivered SN is suppressed.
  CHECK(rx.receive_segment(seg, 20).empty());
}

TEST_CASE("out-of-order SNs deliver only once the gap fills") {
  AmReceiver rx(am_config());
  RlcSegment s1;
  s1.sn = 1;
  s1.payload_bytes = 100;
  s1.original_bytes = 100;
  s1.fragments = {SduFragment{11, 100, 0, 100, true, 0}};
  CHECK(rx.receive_segment(s1, 10).empty());  // SN 0 missing

  RlcSegment s0 = s1;
  s0.sn = 0;
  s0.fragments = {SduFragment{10, 100, 0, 100, true, 0}};
  auto delivered = rx.receive_segment(s0, 20);
  REQUIRE(delivered.size() == 2);
  CHECK(delivered[0].payload_id == 10);
  CHECK(delivered[1].payload_id == 11);
}

TEST_CASE("inconsistent subsegments count a protocol error and re-request") {
  AmReceiver rx(am_config());
  RlcSegment a;
  a.sn = 0;
  a.byte_offset = 0;
  a.payload_bytes = 400;
  a.original_bytes = 1000;
  (void)rx.receive_segment(a, 10);
  RlcSegment bad = a;
  bad.original_bytes = 900;  // disagrees about the PDU length
  (void)rx.receive_segment(bad, 20);
  CHECK(rx.protocol_error_count() == 1);
  CHECK(rx.status_due(20));
  auto status = rx.make_status(20);
  CHECK(status.ack_sn == 0);
}

TEST_CASE("status reports ack and nacks; poll triggers status") {
  AmConfig cfg = am_config();
  AmTransmitter tx(cfg);
  AmReceiver rx(cfg);
  for (int i = 0; i < 3; ++i) {
    tx.enqueue_sdu(make_sdu(i + 1, 100, 0), 0);
    auto segs = tx.tx_opportunity(200, 10 + i);
    REQUIRE(segs.size() == 1);
    if (i == 1) continue;  // lose SN 1
    (void)rx.receive_segment(segs[0], 10 + i);
  }
  // The last PDU carried a poll (queues drained).
  CHECK(rx.status_due(100));
  auto status = rx.make_status(100);
  CHECK(status.ack_sn == 1);
  REQUIRE(status.nacks.size() == 1);
  CHECK(status.nacks[0] == 1);

  tx.on_status(status, 200);
  auto retx = tx.tx_opportunity(10'000, 300);
  REQUIRE(retx.size() == 1);
  CHECK(retx[0].sn == 1);
  auto delivered = rx.receive_segment(retx[0], 400);
  // Filling the gap releases both the retransmitted SN and the buffered one.
  REQUIRE(delivered.size() == 2);
  CHECK(delivered[0].payload_id == 2);
  CHECK(delivered[1].payload_id == 3);
}

TEST_CASE("all SNs received yields a pure ack and empty retx queue") {
  AmConfig cfg = am_config();
  AmTransmitter tx(cfg);
  AmReceiver rx(cfg);
  for (int i = 0; i < 3; ++i) {
    tx.enqueue_sdu(make_sdu(i + 1, 100, 0), 0);
    auto segs = tx.tx_opportunity(200, 10 + i);
    (void)rx.receive_segment(segs[0], 10 + i);
  }
  auto status = rx.make_status(100);
  CHECK(status.ack_sn == 3);
  CHECK(status.nacks.empty());
  tx.on_status(status, 110);
  CHECK(tx.unacked_pdus() == 0);
  CHECK(tx.tx_opportunity(10'000, 200).empty());
}

TEST_CASE("unanswered poll re-arms and retransmits after 2 ms") {
  AmConfig cfg = am_config();
  AmTransmitter tx(cfg);
  tx.enqueue_sdu(make_sdu(1, 100, 0), 0);
  auto segs = tx.tx_opportunity(200, 0);
  REQUIRE(segs.size() == 1);
  CHECK(segs[0].poll);  // queues drained -> poll
  // No status arrives within the 2 ms poll-retransmit timeout.
  tx.on_timer_check(ms_to_ns(1));
  CHECK(tx.tx_opportunity(10'000, ms_to_ns(1)).empty());
  tx.on_timer_check(ms_to_ns(2));
  auto repoll = tx.tx_opportunity(10'000, ms_to_ns(2));
  REQUIRE(repoll.size() == 1);
  CHECK(repoll[0].sn == segs[0].sn);
}

TEST_CASE("reordering gap triggers a status after the 1 ms timer") {
  AmConfig cfg = am_config();
  AmTransmitter tx(cfg);
  AmReceiver rx(cfg);
  for (int i = 0; i < 2; ++i) {
    tx.enqueue_sdu(make_sdu(i + 1, 100, 0), 0);
  }
  auto s0 = tx.tx_opportunity(102, 0);
  auto s1 = tx.tx_opportunity(102, 10);
  REQUIRE(s0.size() == 1);
  REQUIRE(s1.size() == 1);
  // SN 0 lost; SN 1 arrives and opens a gap (no poll on s1: queue was empty
  // only after s1... force the gap path regardless of polls).
  (void)rx.receive_segment(s1[0], us_to_ns(100));
  (void)rx.make_status(us_to_ns(100));  // absorb any poll-triggered status
  CHECK_FALSE(rx.status_due(us_to_ns(500)));
  CHECK(rx.status_due(us_to_ns(100) + ms_to_ns(1)));
  auto status = rx.make_status(us_to_ns(100) + ms_to_ns(1));
  CHECK(status.ack_sn == 0);
  REQUIRE(!status.nacks.empty());
  CHECK(status.nacks[0] == 0);
}

TEST_CASE("lossless delivery under random segment loss") {
  // Property: every enqueued SDU is delivered exactly once, in order, under
  // 20% segment loss with periodic status exchange.
  AmConfig cfg = am_config();
  AmTransmitter tx(cfg);
  AmReceiver rx(cfg);
  RngManager mgr(77);
  auto rng = mgr.stream("rlc-loss");
  const int total = 2000;
  int enqueued = 0;
  std::vector<std::uint64_t> delivered_ids;
  TimeNs now = 0;
  int idle_rounds = 0;
  while (static_cast<int>(delivered_ids.size()) < total && idle_rounds < 5000) {
    now += us_to_ns(100);
    if (enqueued < total) {
      tx.enqueue_sdu(make_sdu(enqueued + 1, 120, now), now);
      ++enqueued;
    }
    auto segs = tx.tx_opportunity(300, now);
    bool progress = false;
    for (const auto& seg : segs) {
      if (rng.uniform() < 0.2) continue;  // segment lost
      auto out = rx.receive_segment(seg, now);
      for (const auto& d : out) delivered_ids.push_back(d.payload_id);
      progress = !out.empty() || progress;
    }
    tx.on_timer_check(now);
    if (rx.status_due(now)) {
      auto status = rx.make_status(now);
      if (rng.uniform() >= 0.05) {  // status itself rarely lost
        tx.on_status(status, now);
      }
    }
    idle_rounds = progress ? 0 : idle_rounds + 1;
  }
  REQUIRE(static_cast<int>(delivered_ids.size()) == total);
  for (int i = 0; i < total; ++i) {
    CHECK(delivered_ids[i] == static_cast<std::uint64_t>(i + 1));
  }
}

TEST_CASE("UM receiver skips gaps after the reordering timer") {
  AmConfig cfg = am_config();
  cfg.mode = RlcMode::Um;
  AmReceiver rx(cfg);
  RlcSegment s1;
  s1.sn = 1;
  s1.payload_bytes = 100;
  s1.original_bytes = 100;
  s1.fragments = {SduFragment{21, 100, 0, 100, true, 0}};
  CHECK(rx.receive_segment(s1, 0).empty());
  CHECK(rx.on_timer_check(us_to_ns(500)).empty());  // timer still running
  auto skipped = rx.on_timer_check(ms_to_ns(2));
  REQUIRE(skipped.size() == 1);
  CHECK(skipped[0].payload_id == 21);
}

TEST_CASE("drain for forwarding hands over pending SDUs exactly once") {
  AmConfig cfg = am_config();
  AmTransmitter tx(cfg);
  for (int i = 0; i < 5; ++i) tx.enqueue_sdu(make_sdu(i + 1, 100, 0), 0);
  (void)tx.tx_opportunity(206, 10);  // SN 0 carries SDUs 1-2, unacked
  auto forwarded = tx.drain_for_forwarding(20);
  REQUIRE(forwarded.size() == 5);
  for (int i = 0; i < 5; ++i) {
    CHECK(forwarded[i].payload_id == static_cast<std::uint64_t>(i + 1));
  }
  CHECK(tx.buffer_status_bytes() == 0);
}
