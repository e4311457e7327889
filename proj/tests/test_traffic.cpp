/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "mmwavesim/core/rng.hpp"
#include "mmwavesim/core/simulator.hpp"
#include "mmwavesim/traffic/aimd.hpp"
#include "mmwavesim/traffic/packet.hpp"
#include "mmwavesim/traffic/source.hpp"

using namespace mmwavesim;
using namespace mmwavesim::traffic;

TEST_CASE("traffic spec parsing") {
  auto p = parse_traffic_spec("poisson rate_pps=12500 size_b=100");
  CHECK(p.kind == TrafficKind::Poisson);
  CHECK(p.rate_pps == 12500);
  CHECK(p.packet_bytes == 100);
  CHECK(p.offered_load_bps() == doctest::Approx(10e6));

  auto c = parse_traffic_spec("cbr rate_mbps=2 size_b=100");
  CHECK(c.rate_pps == doctest::Approx(2500.0));

  CHECK(parse_traffic_spec("full_buffer").kind == TrafficKind::FullBuffer);
  CHECK_THROWS(parse_traffic_spec("warble"));
  CHECK_THROWS(parse_traffic_spec("poisson rate_pps=0"));
}

TEST_CASE("poisson source converges to the offered load within 1%") {
  Simulator sim;
  RngManager mgr(5);
  TrafficSpec spec;
  spec.kind = TrafficKind::Poisson;
  spec.rate_pps = 12'500;
  spec.packet_bytes = 100;
  std::uint64_t packets = 0, bytes = 0;
  ArrivalSource src(sim, mgr.stream("traffic", 0), spec,
                    [&](std::uint64_t, std::uint32_t b) {
                      ++packets;
                      bytes += b;
                    });
  const double duration_s = 40.0;
  src.start(0, sec_to_ns(duration_s));
  sim.run_until(sec_to_ns(duration_s));
  const double offered_bps = bytes * 8.0 / duration_s;
  CHECK(offered_bps == doctest::Approx(10e6).epsilon(0.01));
}

TEST_CASE("zero elapsed time produces zero packets") {
  Simulator sim;
  RngManager mgr(5);
  TrafficSpec spec;
  int packets = 0;
  ArrivalSource src(sim, mgr.stream("traffic", 0), spec,
                    [&](std::uint64_t, std::uint32_t) { ++packets; });
  src.start(0, 0);
  sim.run_until(0);
  CHECK(packets == 0);
}

TEST_CASE("packet lifecycle stamps enforce ordering") {
  PacketRegistry reg;
  auto id = reg.create(1, 0, 100, 1000);
  CHECK_THROWS_AS(reg.stamp_ip_deliver(id, 2000), std::logic_error);
  reg.stamp_pdcp_enqueue(id, 1500);
  CHECK_THROWS_AS(reg.stamp_pdcp_enqueue(id, 1600), std::logic_error);
  CHECK_THROWS_AS(reg.stamp_ip_deliver(id, 1400), std::logic_error);
  reg.stamp_ip_deliver(id, 2500);
  CHECK(reg.at(id).delivered());
  CHECK(reg.at(id).latency() == 1000);
  CHECK_THROWS_AS(reg.stamp_ip_deliver(id, 2600), std::logic_error);
}

TEST_CASE("undelivered packets keep their loss fate") {
  PacketRegistry reg;
  auto id = reg.create(1, 0, 100, 0);
  reg.mark_lost(id, PacketFate::AqmDropped);
  CHECK(reg.at(id).fate == PacketFate::AqmDropped);
  // a later, different verdict does not overwrite
  reg.mark_lost(id, PacketFate::HarqLost);
  CHECK(reg.at(id).fate == PacketFate::AqmDropped);
}

TEST_CASE("slow start doubles and loss halves the window") {
  CongestionController cc;
  CHECK(cc.state().cwnd_pkts == 1.0);
  (void)cc.take_send_slot();
  (void)cc.on_ack(1, ms_to_ns(1), 0);
  CHECK(cc.state().cwnd_pkts == 2.0);  // cwnd 1, slow start, 1 ack -> 2
  (void)cc.take_send_slot();
  (void)cc.take_send_slot();
  (void)cc.on_ack(3, ms_to_ns(2), ms_to_ns(1));
  CHECK(cc.state().cwnd_pkts == 4.0);

  // Fill the pipe then lose the head: three duplicate ACKs trigger fast
  // retransmit and a multiplicative decrease.
  while (cc.can_send()) (void)cc.take_send_slot();
  const double before = cc.state().cwnd_pkts;
  (void)cc.on_ack(3, ms_to_ns(3), -1);
  (void)cc.on_ack(3, ms_to_ns(4), -1);
  auto retx = cc.on_ack(3, ms_to_ns(5), -1);
  REQUIRE(retx.has_value());
  CHECK(*retx == 3);
  CHECK(cc.state().ssthresh_pkts == doctest::Approx(before / 2.0));
  CHECK(cc.state().cwnd_pkts == doctest::Approx(before / 2.0));
  CHECK(cc.loss_events() == 1);
}

TEST_CASE("congestion avoidance grows by one packet per window") {
  CongestionController cc;
  // Slow-start to cwnd 4: ack each packet individually.
  (void)cc.take_send_slot();
  (void)cc.on_ack(1, ms_to_ns(1), 0);
  (void)cc.take_send_slot();
  (void)cc.take_send_slot();
  (void)cc.on_ack(2, ms_to_ns(2), -1);
  (void)cc.on_ack(3, ms_to_ns(3), -1);
  CHECK(cc.state().cwnd_pkts == 4.0);
  // Send 4, lose the first: three dup acks force MD into avoidance.
  while (cc.can_send()) (void)cc.take_send_slot();
  (void)cc.on_ack(3, ms_to_ns(4), -1);
  (void)cc.on_ack(3, ms_to_ns(5), -1);
  auto r = cc.on_ack(3, ms_to_ns(6), -1);
  REQUIRE(r.has_value());
  CHECK(*r == 3);
  CHECK(cc.state().mode == CcMode::Avoidance);
  const double w0 = cc.state().cwnd_pkts;
  CHECK(w0 == doctest::Approx(2.0));
  // Recovery completes, then one full window of per-packet ACKs grows the
  // window by about one packet.
  (void)cc.on_ack(cc.send_next(), ms_to_ns(7), -1);
  const double w1 = cc.state().cwnd_pkts;
  const auto base = cc.cum_acked();
  while (cc.can_send()) (void)cc.take_send_slot();
  const auto sent = cc.send_next();
  for (auto s2 = base + 1; s2 <= sent; ++s2) {
    (void)cc.on_ack(s2, ms_to_ns(8), -1);
  }
  CHECK(cc.state().cwnd_pkts == doctest::Approx(w1 + 1.0).epsilon(0.2));
}

TEST_CASE("RTO resets to slow start") {
  CongestionController::Config cfg;
  cfg.min_rto = ms_to_ns(10);
  CongestionController cc(cfg);
  (void)cc.take_send_slot();
  CHECK_FALSE(cc.on_timer(ms_to_ns(5)).has_value());
  auto r = cc.on_timer(ms_to_ns(500));
  REQUIRE(r.has_value());
  CHECK(*r == 0);
  CHECK(cc.state().cwnd_pkts == 1.0);
  CHECK(cc.state().mode == CcMode::SlowStart);
}

TEST_CASE("in-flight never exceeds the window at send decisions") {
  RngManager mgr(9);
  auto rng = mgr.stream("cc");
  CongestionController cc;
  CumulativeAcker acker;
  TimeNs now = 0;
  for (int step = 0; step < 20'000; ++step) {
    now += us_to_ns(10);
    while (cc.can_send()) {
      CHECK(cc.in_flight() < cc.state().cwnd_pkts);
      const auto seq = cc.take_send_slot();
      if (rng.uniform() < 0.02) continue;  // lost
      auto res = acker.on_delivery(seq);
      (void)cc.on_ack(res.cum_ack, now, now - ms_to_ns(1));
    }
    (void)cc.on_timer(now);
  }
  CHECK(cc.cum_acked() > 0);
}

TEST_CASE("cumulative acker dedups and advances through gap fills") {
  CumulativeAcker acker;
  auto r0 = acker.on_delivery(0);
  CHECK(r0.cum_ack == 1);
  CHECK(r0.first_delivery);
  auto r2 = acker.on_delivery(2);
  CHECK(r2.cum_ack == 1);  // hole at 1
  auto dup = acker.on_delivery(2);
  CHECK_FALSE(dup.first_delivery);
  auto r1 = acker.on_delivery(1);
  CHECK(r1.cum_ack == 3);
  auto old_dup = acker.on_delivery(0);
  CHECK_FALSE(old_dup.first_delivery);
}

TEST_CASE("AIMD over a fixed-rate bottleneck tracks the link rate") {
  // Closed-form check: a deterministic 50 Mbps bottleneck with 10 ms RTT
  // should carry within 10% of the link rate once past slow start.
  Simulator sim;
  CongestionController::Config cc_cfg;
  cc_cfg.initial_ssthresh_pkts = 64;
  CongestionController cc(cc_cfg);
  CumulativeAcker acker;
  const double link_bps = 50e6;
  const std::uint32_t pkt = 1250;  // 10 kb
  const TimeNs rtt = ms_to_ns(10);
  const std::size_t queue_limit = 200;
  std::deque<std::uint64_t> queue;
  TimeNs link_free_at = 0;
  std::uint64_t delivered_bytes = 0;
  TimeNs measure_from = sec_to_ns(2.0);

  std::function<void()> pump = [&] {
    while (cc.can_send()) {
      const auto seq = cc.take_send_slot();
      if (queue.size() >= queue_limit) {
        continue;  // tail drop
      }
      queue.push_back(seq);
    }
    if (!queue.empty() && link_free_at <= sim.now()) {
      const auto seq = queue.front();
      queue.pop_front();
      const TimeNs ser = static_cast<TimeNs>(pkt * 8.0 / link_bps * 1e9);
      link_free_at = sim.now() + ser;
      sim.schedule(link_free_at, [&, seq] {
        auto res = acker.on_delivery(seq);
        if (sim.now() >= measure_from && res.first_delivery) {
          delivered_bytes += pkt;
        }
        // Duplicate deliveries are not acknowledged, so retransmissions of
        // packets that were not actually lost cannot echo as dup ACKs.
        if (res.first_delivery) {
          sim.schedule_in(rtt, [&, res] {
            auto retx = cc.on_ack(res.cum_ack, sim.now(), sim.now() - rtt);
            if (retx) queue.push_front(*retx);
            pump();
          });
        }
        pump();
      });
    }
  };
  sim.schedule(0, pump);
  for (TimeNs t = 0; t <= sec_to_ns(10); t += ms_to_ns(50)) {
    sim.schedule(t, [&] {
      auto retx = cc.on_timer(sim.now());
      if (retx) queue.push_front(*retx);
      pump();
    });
  }
  sim.run_until(sec_to_ns(10));
  const double goodput = delivered_bytes * 8.0 / 8.0;  // over 8 s
  CHECK(goodput > 0.9 * link_bps);
  CHECK(goodput < 1.02 * link_bps);
}
