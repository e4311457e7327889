/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "mmwavesim/mac/scheduler.hpp"

using namespace mmwavesim;
using namespace mmwavesim::mac;

namespace {

const phy::FrameConfig& cfg() {
  static phy::FrameConfig c;
  return c;
}

UeSchedState make_user(std::uint32_t ue, std::uint64_t buffer, int cqi) {
  UeSchedState u;
  u.ue = ue;
  u.buffer_bytes = buffer;
  u.cqi = cqi;
  u.free_process_ids.resize(20);
  std::iota(u.free_process_ids.begin(), u.free_process_ids.end(), 0);
  return u;
}

std::vector<phy::SlotAlloc> data_slots(const phy::SubframeAllocation& alloc) {
  std::vector<phy::SlotAlloc> out;
  for (const auto& s : alloc.slots) {
    if (s.kind == phy::SlotKind::Data) out.push_back(s);
  }
  return out;
}

int symbols_for_ue(const phy::SubframeAllocation& alloc, std::uint32_t ue) {
  int total = 0;
  for (const auto& s : data_slots(alloc)) {
    if (s.ue == ue) total += s.num_symbols;
  }
  return total;
}

}  // namespace

TEST_CASE("tb_size matches the closed form at default numerology") {
  CHECK(cfg().data_subcarriers() == 2592);
  // Direct evaluation of floor(n * 2592 * order * rate / 8) per symbol.
  for (int mcs = 0; mcs < kNumMcs; ++mcs) {
    const auto& e = mcs_entry(mcs);
    const std::int64_t expect =
        static_cast<std::int64_t>(2592) * modulation_order(e.modulation) *
        e.rate_x1024 / 1024 / 8;
    CHECK(tb_size_bytes(mcs, 1, cfg()) == expect);
  }
  // An order-2, rate-1/2 scheme would carry floor(2592*2*0.5/8) = 324 bytes
  // in one symbol; the ladder brackets that value between MCS 6 and 7.
  CHECK(tb_size_bytes(6, 1, cfg()) < 324);
  CHECK(tb_size_bytes(7, 1, cfg()) > 324);
}

TEST_CASE("tb_size is nondecreasing in symbols and MCS") {
  for (int mcs = 0; mcs + 1 < kNumMcs; ++mcs) {
    CHECK(tb_size_bytes(mcs + 1, 5, cfg()) > tb_size_bytes(mcs, 5, cfg()));
  }
  for (int n = 1; n < 22; ++n) {
    CHECK(tb_size_bytes(10, n + 1, cfg()) > tb_size_bytes(10, n, cfg()));
  }
}

TEST_CASE("spectral efficiency is strictly increasing across the ladder") {
  for (int mcs = 0; mcs + 1 < kNumMcs; ++mcs) {
    CHECK(mcs_entry(mcs + 1).spectral_efficiency() >
          mcs_entry(mcs).spectral_efficiency());
  }
}

TEST_CASE("n_symbols_for inverts tb_size for all symbol counts") {
  for (int mcs = 0; mcs < kNumMcs; ++mcs) {
    for (int k = 1; k <= 22; ++k) {
      CHECK(n_symbols_for(tb_size_bytes(mcs, k, cfg()), mcs, cfg(), 22) == k);
    }
  }
}

TEST_CASE("cqi_to_mcs floors, ceilings and is monotone") {
  CHECK(cqi_to_mcs(0) == 0);
  CHECK(cqi_to_mcs(kMaxCqi) == kNumMcs - 1);
  int prev = -1;
  for (int cqi = 0; cqi <= kMaxCqi; ++cqi) {
    const int m = cqi_to_mcs(cqi);
    CHECK(m >= prev);
    prev = m;
  }
}

TEST_CASE("RR splits symbols evenly between saturated users") {
  ScheduleParams params;
  params.policy = SchedulerPolicy::RoundRobin;
  auto a = make_user(1, 1'000'000, 20);
  auto b = make_user(2, 1'000'000, 20);
  std::vector<UeSchedState*> dl{&a, &b}, ul;
  std::size_t rr = 0;
  auto alloc = schedule_subframe(params, dl, ul, cfg(), 2, rr);
  CHECK(symbols_for_ue(alloc, 1) == 11);
  CHECK(symbols_for_ue(alloc, 2) == 11);
}

TEST_CASE("RR redistributes surplus from users needing fewer symbols") {
  ScheduleParams params;
  params.policy = SchedulerPolicy::RoundRobin;
  const std::uint32_t bytes3 = tb_size_bytes(20, 3, cfg());
  auto a = make_user(1, bytes3, 20);
  auto b = make_user(2, 10'000'000, 20);
  std::vector<UeSchedState*> dl{&a, &b}, ul;
  std::size_t rr = 0;
  auto alloc = schedule_subframe(params, dl, ul, cfg(), 2, rr);
  CHECK(symbols_for_ue(alloc, 1) == 3);
  CHECK(symbols_for_ue(alloc, 2) == 19);
}

TEST_CASE("RR gives near-equal shares to identical users over time") {
  ScheduleParams params;
  params.policy = SchedulerPolicy::RoundRobin;
  std::vector<UeSchedState> users;
  for (int i = 0; i < 5; ++i) users.push_back(make_user(i, 1'000'000, 15));
  std::size_t rr = 0;
  std::vector<long> totals(5, 0);
  for (int sf = 0; sf < 1000; ++sf) {
    std::vector<UeSchedState*> dl;
    for (auto& u : users) {
      u.buffer_bytes = 1'000'000;
      u.free_process_ids.assign({0, 1, 2, 3, 4});
      dl.push_back(&u);
    }
    std::vector<UeSchedState*> ul;
    auto alloc = schedule_subframe(params, dl, ul, cfg(), sf, rr);
    int subframe_total = 0;
    std::vector<int> per_ue(5, 0);
    for (const auto& s : data_slots(alloc)) {
      per_ue[s.ue] += s.num_symbols;
      subframe_total += s.num_symbols;
    }
    CHECK(subframe_total <= cfg().data_symbols_per_subframe());
    const auto [mn, mx] = std::minmax_element(per_ue.begin(), per_ue.end());
    CHECK(*mx - *mn <= 1);
    for (int i = 0; i < 5; ++i) totals[i] += per_ue[i];
  }
  double sum = 0.0, sq = 0.0;
  for (long t : totals) {
    sum += t;
    sq += static_cast<double>(t) * t;
  }
  CHECK(sum * sum / (5.0 * sq) > 0.99);
}

TEST_CASE("MR starves the lower tier when the top tier saturates") {
  ScheduleParams params;
  params.policy = SchedulerPolicy::MaxRate;
  auto fast = make_user(1, 10'000'000, 28);
  auto slow = make_user(2, 10'000'000, 10);
  std::vector<UeSchedState*> dl{&fast, &slow}, ul;
  std::size_t rr = 0;
  auto alloc = schedule_subframe(params, dl, ul, cfg(), 2, rr);
  CHECK(symbols_for_ue(alloc, 1) == 22);
  CHECK(symbols_for_ue(alloc, 2) == 0);
}

TEST_CASE("EDF serves the earliest deadline first") {
  ScheduleParams params;
  params.policy = SchedulerPolicy::EarliestDeadlineFirst;
  auto late = make_user(1, 10'000'000, 15);
  late.hol_deadline = us_to_ns(300);
  auto urgent = make_user(2, 10'000'000, 15);
  urgent.hol_deadline = us_to_ns(100);
  std::vector<UeSchedState*> dl{&late, &urgent}, ul;
  std::size_t rr = 0;
  auto alloc = schedule_subframe(params, dl, ul, cfg(), 2, rr);
  auto slots = data_slots(alloc);
  REQUIRE(!slots.empty());
  CHECK(slots.front().ue == 2);
  CHECK(symbols_for_ue(alloc, 2) == 22);
  CHECK(symbols_for_ue(alloc, 1) == 0);
}

TEST_CASE("PF prefers the higher instantaneous rate at equal averages") {
  ScheduleParams params;
  params.policy = SchedulerPolicy::ProportionalFair;
  auto strong = make_user(1, 10'000'000, 25);
  auto weak = make_user(2, 10'000'000, 5);
  strong.pf_avg_rate_bps = weak.pf_avg_rate_bps = 1e6;
  std::vector<UeSchedState*> dl{&weak, &strong}, ul;
  std::size_t rr = 0;
  auto alloc = schedule_subframe(params, dl, ul, cfg(), 2, rr);
  auto slots = data_slots(alloc);
  REQUIRE(!slots.empty());
  CHECK(slots.front().ue == 1);
}

TEST_CASE("fixed TTI with a full-subframe quantum schedules one user") {
  ScheduleParams params;
  params.policy = SchedulerPolicy::RoundRobin;
  params.tti = TtiMode::fixed_tti(24);
  std::vector<UeSchedState> users;
  for (int i = 0; i < 4; ++i) users.push_back(make_user(i + 1, 50'000, 15));
  std::vector<UeSchedState*> dl, ul;
  for (auto& u : users) dl.push_back(&u);
  std::size_t rr = 0;
  auto alloc = schedule_subframe(params, dl, ul, cfg(), 2, rr);
  int users_scheduled = 0;
  for (int i = 1; i <= 4; ++i) {
    if (symbols_for_ue(alloc, i) > 0) ++users_scheduled;
  }
  CHECK(users_scheduled == 1);
}

TEST_CASE("retransmissions precede new data and budget is never exceeded") {
  ScheduleParams params;
  params.policy = SchedulerPolicy::RoundRobin;
  auto u = make_user(1, 1'000'000, 20);
  u.harq_pending.push_back(RetxRequest{5, 2, 4, 18, 7000});
  std::vector<UeSchedState*> dl{&u}, ul;
  std::size_t rr = 0;
  auto alloc = schedule_subframe(params, dl, ul, cfg(), 2, rr);
  auto slots = data_slots(alloc);
  REQUIRE(slots.size() >= 2);
  CHECK(slots.front().harq.is_retx);
  CHECK(slots.front().harq.process_id == 5);
  CHECK(slots.front().num_symbols == 4);
  CHECK(slots.front().mcs == 18);
  int total = 0;
  for (const auto& s : slots) total += s.num_symbols;
  CHECK(total <= cfg().data_symbols_per_subframe());
}

TEST_CASE("zero-buffer users are never allocated") {
  ScheduleParams params;
  auto u = make_user(1, 0, 20);
  std::vector<UeSchedState*> dl{&u}, ul;
  std::size_t rr = 0;
  auto alloc = schedule_subframe(params, dl, ul, cfg(), 2, rr);
  CHECK(data_slots(alloc).empty());
}

TEST_CASE("a BSR equal to one TB requests exactly the inverse symbol count") {
  const int mcs = 12;
  const std::uint32_t tb = tb_size_bytes(mcs, 7, cfg());
  auto u = make_user(1, tb, mcs);
  ScheduleParams params;
  params.policy = SchedulerPolicy::RoundRobin;
  std::vector<UeSchedState*> dl{&u}, ul;
  std::size_t rr = 0;
  auto alloc = schedule_subframe(params, dl, ul, cfg(), 2, rr);
  CHECK(symbols_for_ue(alloc, 1) == 7);
}

TEST_CASE("HARQ pool feedback lifecycle") {
  HarqTxPool pool(20, 3);
  auto pid = pool.reserve();
  REQUIRE(pid.has_value());
  pool.mark_sent(*pid, 6, 14, 5000, 1);
  CHECK(pool.in_flight(*pid));

  SUBCASE("ack frees the process") {
    CHECK_FALSE(pool.on_feedback(*pid, true).has_value());
    CHECK_FALSE(pool.in_flight(*pid));
  }
  SUBCASE("nack below the limit requests an identical retransmission") {
    auto retx = pool.on_feedback(*pid, false);
    REQUIRE(retx.has_value());
    CHECK(retx->process_id == *pid);
    CHECK(retx->attempt == 2);
    CHECK(retx->num_symbols == 6);
    CHECK(retx->mcs == 14);
    CHECK(pool.in_flight(*pid));
  }
  SUBCASE("third nack frees the process and counts the loss") {
    pool.mark_sent(*pid, 6, 14, 5000, 3);
    CHECK_FALSE(pool.on_feedback(*pid, false).has_value());
    CHECK_FALSE(pool.in_flight(*pid));
    CHECK(pool.exhausted_count() == 1);
  }
  SUBCASE("feedback for an idle process is an error") {
    (void)pool.on_feedback(*pid, true);
    CHECK_THROWS_AS((void)pool.on_feedback(*pid, true), std::runtime_error);
  }
}

TEST_CASE("guard symbol is charged on UL-to-DL transitions") {
  phy::AllocationBuilder builder(cfg());
  phy::SlotAlloc dl1;
  dl1.direction = phy::Direction::Downlink;
  dl1.num_symbols = 4;
  phy::SlotAlloc ul;
  ul.direction = phy::Direction::Uplink;
  ul.num_symbols = 4;
  phy::SlotAlloc dl2 = dl1;
  CHECK(builder.try_add(dl1));
  CHECK(builder.try_add(ul));
  CHECK(builder.try_add(dl2));
  auto alloc = builder.build(0);
  REQUIRE(alloc.slots.size() == 5);
  CHECK(alloc.slots[2].end_symbol() + 1 == alloc.slots[3].first_symbol);
  CHECK(alloc.slots[1].end_symbol() == alloc.slots[2].first_symbol);
}

TEST_CASE("an empty subframe holds only the two control symbols") {
  phy::AllocationBuilder builder(cfg());
  auto alloc = builder.build(0);
  REQUIRE(alloc.slots.size() == 2);
  CHECK(alloc.slots[0].kind == phy::SlotKind::Ctrl);
  CHECK(alloc.slots[0].first_symbol == 0);
  CHECK(alloc.slots[1].kind == phy::SlotKind::Ctrl);
  CHECK(alloc.slots[1].first_symbol == 23);
}

TEST_CASE("a single 22-symbol DL slot occupies symbols 1..22") {
  phy::AllocationBuilder builder(cfg());
  phy::SlotAlloc dl;
  dl.direction = phy::Direction::Downlink;
  dl.num_symbols = 22;
  CHECK(builder.try_add(dl));
  auto alloc = builder.build(0);
  REQUIRE(alloc.slots.size() == 3);
  CHECK(alloc.slots[1].first_symbol == 1);
  CHECK(alloc.slots[1].end_symbol() == 23);
}
