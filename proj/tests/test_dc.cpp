/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include <doctest.h>

#include <map>
#include <vector>

#include "mmwavesim/dc/bearer.hpp"
#include "mmwavesim/dc/coordinator.hpp"

using namespace mmwavesim;
using namespace mmwavesim::dc;

TEST_CASE("coordinator table updates and best-cell argmax") {
  Coordinator coord({-5.0, 3.0, us_to_ns(1600)});
  CHECK_FALSE(coord.best_cell(1, 0).has_value());
  coord.ingest_measurement({1, 10, 12.0, 0}, us_to_ns(100));
  auto best = coord.best_cell(1, us_to_ns(200));
  REQUIRE(best.has_value());
  CHECK(best->first == 10);
  coord.ingest_measurement({1, 11, 18.0, 0}, us_to_ns(300));
  best = coord.best_cell(1, us_to_ns(400));
  REQUIRE(best.has_value());
  CHECK(best->first == 11);
  CHECK(best->second == 18.0);
}

TEST_CASE("stale entries are invalid after three report periods") {
  Coordinator coord({-5.0, 3.0, ms_to_ns(1)});
  coord.ingest_measurement({1, 10, 12.0, 0}, 0);
  CHECK(coord.best_cell(1, ms_to_ns(3)).has_value());
  CHECK_FALSE(coord.best_cell(1, ms_to_ns(4)).has_value());
}

TEST_CASE("decide: healthy serving cell needs no command") {
  Coordinator coord({-5.0, 3.0, ms_to_ns(1)});
  coord.ingest_measurement({1, 10, 20.0, 0}, 0);
  auto cmd = coord.decide(1, Leg::MmWave, 10, us_to_ns(100));
  CHECK(cmd.kind == CommandKind::None);
}

TEST_CASE("decide: all mmWave cells in outage switches to LTE") {
  Coordinator coord({-5.0, 3.0, ms_to_ns(1)});
  coord.ingest_measurement({1, 10, -9.0, 0}, 0);
  coord.ingest_measurement({1, 11, -7.0, 0}, 0);
  auto cmd = coord.decide(1, Leg::MmWave, 10, us_to_ns(100));
  CHECK(cmd.kind == CommandKind::SwitchToLte);
}

TEST_CASE("decide: neighbor above serving by hysteresis hands over") {
  Coordinator coord({-5.0, 3.0, ms_to_ns(1)});
  coord.ingest_measurement({1, 10, 10.0, 0}, 0);
  coord.ingest_measurement({1, 11, 13.5, 0}, 0);
  auto cmd = coord.decide(1, Leg::MmWave, 10, us_to_ns(100));
  CHECK(cmd.kind == CommandKind::SecondaryHandover);
  CHECK(cmd.target_cell == 11);
  // Below the margin, stay put.
  coord.ingest_measurement({1, 11, 12.0, 0}, us_to_ns(150));
  cmd = coord.decide(1, Leg::MmWave, 10, us_to_ns(200));
  CHECK(cmd.kind == CommandKind::None);
}

TEST_CASE("decide: recovery to mmWave requires threshold plus hysteresis") {
  Coordinator coord({-5.0, 3.0, ms_to_ns(1)});
  coord.ingest_measurement({1, 10, -3.0, 0}, 0);
  CHECK(coord.decide(1, Leg::Lte, 10, us_to_ns(10)).kind == CommandKind::None);
  coord.ingest_measurement({1, 10, -1.5, 0}, us_to_ns(20));
  auto cmd = coord.decide(1, Leg::Lte, 10, us_to_ns(30));
  CHECK(cmd.kind == CommandKind::SwitchToMmWave);
  CHECK(cmd.target_cell == 10);
}

TEST_CASE("decisions are deterministic functions of the delayed table") {
  // A report delayed by the X2 latency drives the decision made at time t
  // with the value generated at t - delay.
  Coordinator coord({-5.0, 3.0, ms_to_ns(1)});
  const TimeNs x2 = ms_to_ns(1);
  // Channel collapses at t=0; the report reaches the anchor at t=x2.
  coord.ingest_measurement({1, 10, 15.0, -ms_to_ns(1)}, 0);
  CHECK(coord.decide(1, Leg::MmWave, 10, us_to_ns(500)).kind ==
        CommandKind::None);
  coord.ingest_measurement({1, 10, -20.0, 0}, x2);
  CHECK(coord.decide(1, Leg::MmWave, 10, x2).kind == CommandKind::SwitchToLte);
}

namespace {

struct BearerFixture {
  Simulator sim;
  std::map<std::uint32_t, std::vector<DcBearer::PdcpPdu>> mmwave_rlc;
  std::vector<std::pair<TimeNs, std::uint64_t>> lte_delivered;
  std::vector<std::pair<std::uint32_t, Leg>> serving_changes;

  DcBearer::Hooks hooks() {
    DcBearer::Hooks h;
    h.mmwave_enqueue = [this](std::uint32_t cell, const DcBearer::PdcpPdu& p) {
      mmwave_rlc[cell].push_back(p);
    };
    h.mmwave_drain = [this](std::uint32_t cell) {
      std::vector<rlc::Sdu> out;
      for (const auto& p : mmwave_rlc[cell]) {
        out.push_back(rlc::Sdu{p.payload_id, p.bytes, p.sdu_time});
      }
      mmwave_rlc[cell].clear();
      return out;
    };
    h.lte_deliver = [this](const DcBearer::PdcpPdu& p) {
      lte_delivered.emplace_back(sim.now(), p.payload_id);
    };
    h.describe = [](const rlc::Sdu& sdu) {
      return DcBearer::PdcpPdu{sdu.payload_id, sdu.payload_id,
                               sdu.bytes, sdu.enqueue_time};
    };
    h.on_serving_change = [this](std::uint32_t cell, Leg leg) {
      serving_changes.emplace_back(cell, leg);
    };
    return h;
  }
};

}  // namespace

TEST_CASE("routing follows the active leg with X2 and LTE delays") {
  BearerFixture fx;
  DcBearer::Config cfg;
  cfg.mode = DcMode::FastSwitching;
  cfg.x2_delay = ms_to_ns(1);
  cfg.lte.one_way_delay = ms_to_ns(5);
  cfg.lte.rate_bps = 80e6;
  DcBearer bearer(fx.sim, cfg, 1, 10, fx.hooks());

  CHECK(bearer.active_leg() == Leg::MmWave);
  bearer.route_pdu({0, 100, 1000, 0});
  fx.sim.run_until(ms_to_ns(2));
  REQUIRE(fx.mmwave_rlc[10].size() == 1);  // after the X2 delay

  bearer.apply_command({CommandKind::SwitchToLte, 0});
  CHECK(bearer.active_leg() == Leg::Lte);
  bearer.route_pdu({1, 101, 1000, fx.sim.now()});
  fx.sim.run_until(ms_to_ns(10));
  REQUIRE(fx.lte_delivered.size() >= 1);
  // serialization (0.1 ms) + one-way delay (5 ms)
  CHECK(fx.lte_delivered.back().first >=
        ms_to_ns(2) + cfg.lte.one_way_delay);
}

TEST_CASE("fast switch forwards queued PDUs losslessly and in order") {
  BearerFixture fx;
  DcBearer::Config cfg;
  cfg.mode = DcMode::FastSwitching;
  DcBearer bearer(fx.sim, cfg, 1, 10, fx.hooks());
  for (std::uint64_t i = 0; i < 10; ++i) {
    bearer.route_pdu({i, 200 + i, 500, 0});
  }
  fx.sim.run_until(ms_to_ns(2));
  REQUIRE(fx.mmwave_rlc[10].size() == 10);

  bearer.apply_command({CommandKind::SwitchToLte, 0});
  fx.sim.run_until(sec_to_ns(1));
  REQUIRE(fx.lte_delivered.size() == 10);
  for (std::uint64_t i = 0; i < 10; ++i) {
    CHECK(fx.lte_delivered[i].second == 200 + i);
  }
}

TEST_CASE("hard handover adds detection and MME latency before data resumes") {
  BearerFixture fx;
  DcBearer::Config cfg;
  cfg.mode = DcMode::HardHandover;
  cfg.hh_detection_delay = ms_to_ns(200);
  cfg.mme_one_way_delay = ms_to_ns(10);
  DcBearer bearer(fx.sim, cfg, 1, 10, fx.hooks());
  bearer.route_pdu({0, 300, 500, 0});
  fx.sim.run_until(ms_to_ns(2));

  bearer.apply_command({CommandKind::SwitchToLte, 0});
  CHECK(bearer.switching());
  CHECK(bearer.active_leg() == Leg::MmWave);  // still stuck on the dead leg
  // New data during the interruption heads to the dead cell too.
  bearer.route_pdu({1, 301, 500, fx.sim.now()});
  fx.sim.run_until(ms_to_ns(100));
  CHECK(fx.lte_delivered.empty());
  fx.sim.run_until(sec_to_ns(1));
  CHECK_FALSE(bearer.switching());
  CHECK(bearer.active_leg() == Leg::Lte);
  REQUIRE(fx.lte_delivered.size() == 2);
  // Nothing moved before detection + MME round trip completed.
  CHECK(fx.lte_delivered.front().first >= ms_to_ns(220));
}

TEST_CASE("secondary handover re-homes the bearer and forwards the buffer") {
  BearerFixture fx;
  DcBearer::Config cfg;
  DcBearer bearer(fx.sim, cfg, 1, 10, fx.hooks());
  for (std::uint64_t i = 0; i < 5; ++i) bearer.route_pdu({i, 400 + i, 500, 0});
  fx.sim.run_until(ms_to_ns(2));
  REQUIRE(fx.mmwave_rlc[10].size() == 5);

  bearer.apply_command({CommandKind::SecondaryHandover, 11});
  CHECK(bearer.serving_cell() == 11);
  fx.sim.run_until(ms_to_ns(5));
  CHECK(fx.mmwave_rlc[10].empty());
  REQUIRE(fx.mmwave_rlc[11].size() == 5);
  REQUIRE(!fx.serving_changes.empty());
  CHECK(fx.serving_changes.back().first == 11);
}

TEST_CASE("PDCP rx dedups and reorders across legs") {
  PdcpRx rx({true, ms_to_ns(20)});
  auto d0 = rx.on_pdu(0, 100, 0);
  REQUIRE(d0.size() == 1);
  CHECK(d0[0] == 100);
  // SN 2 arrives before SN 1 (leg race): buffered.
  CHECK(rx.on_pdu(2, 102, 10).empty());
  auto d12 = rx.on_pdu(1, 101, 20);
  REQUIRE(d12.size() == 2);
  CHECK(d12[0] == 101);
  CHECK(d12[1] == 102);
  // Duplicate from the other leg is discarded.
  CHECK(rx.on_pdu(1, 101, 30).empty());
  CHECK(rx.duplicates_discarded() == 1);
}

TEST_CASE("PDCP rx flushes past a permanent gap after the timeout") {
  PdcpRx rx({true, ms_to_ns(20)});
  CHECK(rx.on_pdu(1, 101, 0).empty());
  CHECK(rx.on_timer(ms_to_ns(10)).empty());
  auto flushed = rx.on_timer(ms_to_ns(25));
  REQUIRE(flushed.size() == 1);
  CHECK(flushed[0] == 101);
}

TEST_CASE("pass-through PDCP rx skips AQM holes without buffering") {
  PdcpRx rx({false, ms_to_ns(20)});
  auto a = rx.on_pdu(0, 100, 0);
  REQUIRE(a.size() == 1);
  auto b = rx.on_pdu(5, 105, 10);  // SNs 1-4 were AQM-dropped upstream
  REQUIRE(b.size() == 1);
  CHECK(b[0] == 105);
}
