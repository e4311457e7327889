/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include <doctest.h>

#include <cmath>

#include "mmwavesim/channel/blockage.hpp"
#include "mmwavesim/channel/fading.hpp"
#include "mmwavesim/channel/propagation.hpp"
#include "mmwavesim/channel/trace_channel.hpp"
#include "mmwavesim/core/units.hpp"

using namespace mmwavesim;
using namespace mmwavesim::channel;

namespace {

Scenario uma_scenario() {
  Scenario s;
  s.kind = ScenarioKind::UMa;
  s.carrier_hz = 28e9;
  s.bandwidth_hz = 1e9;
  s.enb_height_m = 10.0;
  s.ue_height_m = 1.5;
  return s;
}

const ScenarioParams& params() {
  static ScenarioParams p;
  return p;
}

}  // namespace

TEST_CASE("scenario validation enforces band and bandwidth limits") {
  Scenario s = uma_scenario();
  CHECK_NOTHROW(s.validate());
  s.carrier_hz = 5e9;
  CHECK_THROWS(s.validate());
  s.carrier_hz = 28e9;
  s.bandwidth_hz = 3e9;  // > 10% of carrier
  CHECK_THROWS(s.validate());
}

TEST_CASE("geometric LOS with no obstacles") {
  RngManager mgr(1);
  auto rng = mgr.stream("los");
  auto los = determine_los({0, 0, 10}, {100, 0, 1.5}, {}, LosSource::Geometric,
                           params(), uma_scenario(), rng);
  CHECK(los.condition == LosCondition::Los);
}

TEST_CASE("geometric LOS blocked by a box on the segment midpoint") {
  RngManager mgr(1);
  auto rng = mgr.stream("los");
  Box box{{45, -5, 0}, {55, 5, 20}};
  auto los = determine_los({0, 0, 10}, {100, 0, 1.5}, {box},
                           LosSource::Geometric, params(), uma_scenario(), rng);
  CHECK(los.condition == LosCondition::Nlos);
}

TEST_CASE("geometric LOS is symmetric") {
  RngManager mgr(3);
  auto rng = mgr.stream("los");
  Box box{{10, 2, 0}, {30, 8, 30}};
  const Vec3 a{0, 0, 10}, b{40, 10, 1.5};
  auto ab = determine_los(a, b, {box}, LosSource::Geometric, params(),
                          uma_scenario(), rng);
  auto ba = determine_los(b, a, {box}, LosSource::Geometric, params(),
                          uma_scenario(), rng);
  CHECK(ab.condition == ba.condition);
}

TEST_CASE("UMa LOS probability is 1 below the all-LOS threshold") {
  // Oracle: the UMa curve equals 1 for d2D <= 18 m, so at 10 m every draw
  // must come back LOS.
  CHECK(los_probability(params(), ScenarioKind::UMa, 10.0) == 1.0);
  RngManager mgr(5);
  auto rng = mgr.stream("los");
  for (int i = 0; i < 200; ++i) {
    auto los = determine_los({0, 0, 10}, {10, 0, 1.5}, {},
                             LosSource::Statistical, params(), uma_scenario(),
                             rng);
    CHECK(los.condition == LosCondition::Los);
  }
}

TEST_CASE("NLOS pathloss dominates LOS at equal geometry") {
  for (auto kind : {ScenarioKind::RMa, ScenarioKind::UMa, ScenarioKind::UMi,
                    ScenarioKind::InHOffice, ScenarioKind::InHMall}) {
    Scenario s = uma_scenario();
    s.kind = kind;
    const double d2d = 100.0;
    const double dh = s.enb_height_m - s.ue_height_m;
    const double d3d = std::sqrt(d2d * d2d + dh * dh);
    const double pl_los =
        pathloss_db(params(), s, {LosCondition::Los, LosSource::Statistical},
                    d3d, d2d);
    const double pl_nlos =
        pathloss_db(params(), s, {LosCondition::Nlos, LosSource::Statistical},
                    d3d, d2d);
    CHECK(pl_nlos >= pl_los);
  }
}

TEST_CASE("UMi LOS pre-breakpoint slope is 21 dB per decade") {
  // Oracle: evaluating the UMi-LOS closed form at d and 2d inside the
  // breakpoint region differs by exactly 21*log10(2) dB.
  Scenario s = uma_scenario();
  s.kind = ScenarioKind::UMi;
  const LosState los{LosCondition::Los, LosSource::Statistical};
  const double pl1 = pathloss_db(params(), s, los, 50.0, 50.0);
  const double pl2 = pathloss_db(params(), s, los, 100.0, 100.0);
  CHECK(pl2 - pl1 == doctest::Approx(21.0 * std::log10(2.0)).epsilon(1e-9));
}

TEST_CASE("indoor and outdoor macro pathloss curves differ") {
  Scenario uma = uma_scenario();
  Scenario inh = uma_scenario();
  inh.kind = ScenarioKind::InHOffice;
  inh.enb_height_m = 3.0;
  const LosState los{LosCondition::Los, LosSource::Statistical};
  const double pl_uma = pathloss_db(params(), uma, los, 60.0, 60.0);
  const double pl_inh = pathloss_db(params(), inh, los, 60.0, 60.0);
  CHECK(std::abs(pl_uma - pl_inh) > 1.0);
}

TEST_CASE("pathloss is deterministic and errors below model validity") {
  Scenario s = uma_scenario();
  const LosState los{LosCondition::Los, LosSource::Statistical};
  const double a = pathloss_db(params(), s, los, 123.0, 122.5);
  const double b = pathloss_db(params(), s, los, 123.0, 122.5);
  CHECK(a == b);
  CHECK_THROWS_WITH_AS(
      (void)pathloss_db(params(), s, los, 5.0, 5.0),
      doctest::Contains("below the UMa model minimum"), std::runtime_error);
}

TEST_CASE("shadowing keeps its value for zero displacement") {
  RngManager mgr(9);
  auto rng = mgr.stream("shadow");
  auto st = init_shadowing(6.0, 50.0, 0.0, 0.0, rng);
  auto st2 = update_shadowing(st, 0.0, 0.0, rng);
  CHECK(st2.value_db == st.value_db);
}

TEST_CASE("shadowing decorrelates over large displacement") {
  RngManager mgr(10);
  auto rng = mgr.stream("shadow");
  // At dd >> d_cor the new value is a fresh N(0, sigma^2) draw: correlation
  // with the old value vanishes.
  const double sigma = 6.0;
  const int n = 50'000;
  double sum_xy = 0.0, sum_x = 0.0, sum_y = 0.0, sum_x2 = 0.0, sum_y2 = 0.0;
  auto st = init_shadowing(sigma, 50.0, 0.0, 0.0, rng);
  for (int i = 0; i < n; ++i) {
    auto nxt = update_shadowing(st, st.last_x_m + 5000.0, 0.0, rng);
    sum_xy += st.value_db * nxt.value_db;
    sum_x += st.value_db;
    sum_y += nxt.value_db;
    sum_x2 += st.value_db * st.value_db;
    sum_y2 += nxt.value_db * nxt.value_db;
    st = nxt;
  }
  const double corr =
      (sum_xy / n - sum_x / n * sum_y / n) /
      std::sqrt((sum_x2 / n - sum_x / n * sum_x / n) *
                (sum_y2 / n - sum_y / n * sum_y / n));
  CHECK(std::abs(corr) < 0.02);
}

TEST_CASE("shadowing autocorrelation at one correlation distance is 1/e") {
  // Monte-Carlo oracle for the stated recursion: stepping by d_cor each
  // update gives lag-1 correlation e^-1 and marginal variance sigma^2.
  RngManager mgr(11);
  auto rng = mgr.stream("shadow");
  const double sigma = 4.0, dcor = 37.0;
  const int n = 100'000;
  auto st = init_shadowing(sigma, dcor, 0.0, 0.0, rng);
  double sum_xy = 0.0, sum = 0.0, sum_sq = 0.0;
  std::vector<double> values;
  values.reserve(n + 1);
  values.push_back(st.value_db);
  for (int i = 0; i < n; ++i) {
    st = update_shadowing(st, st.last_x_m + dcor, 0.0, rng);
    values.push_back(st.value_db);
  }
  for (int i = 0; i <= n; ++i) {
    sum += values[i];
    sum_sq += values[i] * values[i];
    if (i < n) sum_xy += values[i] * values[i + 1];
  }
  const double mean = sum / (n + 1);
  const double var = sum_sq / (n + 1) - mean * mean;
  const double corr = (sum_xy / n - mean * mean) / var;
  CHECK(corr == doctest::Approx(std::exp(-1.0)).epsilon(0.055));
  CHECK(var == doctest::Approx(sigma * sigma).epsilon(0.03));
}

namespace {

ChannelState make_channel(ScenarioKind kind, LosCondition cond, int seed,
                          const beamforming::ArrayConfig& tx,
                          const beamforming::ArrayConfig& rx,
                          Vec3 velocity = {0, 0, 0}) {
  RngManager mgr(seed);
  auto rng = mgr.stream("fading");
  Scenario s = uma_scenario();
  s.kind = kind;
  LinkGeometry link;
  link.tx_position_m = {0, 0, 10};
  link.rx_position_m = {80, 20, 1.5};
  link.rx_velocity_mps = velocity;
  return generate_channel(link, params(), s, {cond, LosSource::Statistical},
                          tx, rx, 0, rng);
}

}  // namespace

TEST_CASE("cluster powers are normalized and counts bounded") {
  beamforming::ArrayConfig tx{4, 4}, rx{2, 2};
  for (int seed = 0; seed < 20; ++seed) {
    for (auto cond : {LosCondition::Los, LosCondition::Nlos}) {
      auto st = make_channel(ScenarioKind::UMa, cond, seed, tx, rx);
      CHECK(st.clusters.size() >= 1);
      CHECK(st.clusters.size() <= kMaxClusters);
      double sum = 0.0;
      for (const auto& c : st.clusters) {
        CHECK(c.specular ? c.rays.size() == 1 : c.rays.size() == kRaysPerCluster);
        sum += c.power;
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("single-antenna single-cluster power averages to one") {
  // Normalization oracle: with U=S=1, unit cluster power and no pathloss,
  // the time-average of |h|^2 over many independent draws is 1.
  beamforming::ArrayConfig one{1, 1};
  RngManager mgr(21);
  auto rng = mgr.stream("fading");
  Scenario s = uma_scenario();
  LinkGeometry link{{0, 0, 10}, {80, 0, 1.5}, {0, 0, 0}};
  double acc = 0.0;
  const int n = 10'000;
  for (int i = 0; i < n; ++i) {
    auto st = generate_channel(link, params(), s,
                               {LosCondition::Nlos, LosSource::Statistical},
                               one, one, 0, rng);
    // Condition on a single synthetic cluster of unit power.
    Cluster cl = st.clusters.front();
    cl.power = 1.0;
    st.clusters.assign(1, cl);
    acc += std::norm(st.matrix_at(0)(0, 0));
  }
  CHECK(acc / n == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("LOS channels carry a deterministic specular component") {
  beamforming::ArrayConfig tx{4, 4}, rx{2, 2};
  auto st = make_channel(ScenarioKind::UMa, LosCondition::Los, 33, tx, rx);
  REQUIRE(!st.clusters.empty());
  const auto& first = st.clusters.front();
  CHECK(first.specular);
  // The specular fraction is set by the Ricean K-factor draw.
  const double k_lin = db_to_lin(st.k_factor_db);
  CHECK(first.power >= k_lin / (k_lin + 1.0) - 1e-12);
}

TEST_CASE("channel matrix dimensions match the arrays") {
  beamforming::ArrayConfig tx{8, 8}, rx{4, 4};
  auto st = make_channel(ScenarioKind::UMi, LosCondition::Nlos, 2, tx, rx);
  auto h = st.matrix_at(0);
  CHECK(h.rows() == rx.num_elements());
  CHECK(h.cols() == tx.num_elements());
}

TEST_CASE("spatial consistency: zero velocity leaves the state unchanged") {
  beamforming::ArrayConfig tx{4, 4}, rx{2, 2};
  auto st = make_channel(ScenarioKind::UMa, LosCondition::Nlos, 4, tx, rx);
  LinkGeometry link{{0, 0, 10}, {80, 20, 1.5}, {0, 0, 0}};
  auto moved = advance_spatial_consistency(st, 0.1, link);
  CHECK(moved.matrix_at(0) == st.matrix_at(0));
}

TEST_CASE("spatial consistency: small displacements move angles continuously") {
  beamforming::ArrayConfig tx{4, 4}, rx{2, 2};
  auto st = make_channel(ScenarioKind::UMa, LosCondition::Nlos, 4, tx, rx);
  LinkGeometry link{{0, 0, 10}, {80, 20, 1.5}, {10.0, 0, 0}};
  double prev_max = 1e9;
  for (double dt : {1e-2, 1e-3, 1e-4, 1e-5}) {
    auto moved = advance_spatial_consistency(st, dt, link);
    double max_delta = 0.0;
    for (std::size_t i = 0; i < st.clusters.size(); ++i) {
      max_delta = std::max(
          max_delta, std::abs(wrap_angle_rad(moved.clusters[i].aoa_az -
                                             st.clusters[i].aoa_az)));
    }
    CHECK(max_delta < prev_max);
    prev_max = max_delta;
  }
  CHECK(prev_max < 1e-5);
}

TEST_CASE("spatial consistency: identical states update bit-identically") {
  beamforming::ArrayConfig tx{4, 4}, rx{2, 2};
  auto st = make_channel(ScenarioKind::UMa, LosCondition::Nlos, 6, tx, rx);
  ChannelState clone = st;
  LinkGeometry link{{0, 0, 10}, {80, 20, 1.5}, {3.0, 4.0, 0}};
  auto a = advance_spatial_consistency(st, 0.05, link);
  auto b = advance_spatial_consistency(clone, 0.05, link);
  CHECK(a.matrix_at(ms_to_ns(50)) == b.matrix_at(ms_to_ns(50)));
}

TEST_CASE("blockage: no region covering any cluster leaves state unchanged") {
  beamforming::ArrayConfig tx{4, 4}, rx{2, 2};
  auto st = make_channel(ScenarioKind::UMa, LosCondition::Nlos, 8, tx, rx);
  BlockageState blocked;  // no regions at all
  auto out = apply_blockage(st, blocked, 0.0107);
  for (const auto& c : out.clusters) CHECK(c.blocked_attenuation_db == 0.0);
  CHECK(out.matrix_at(0) == st.matrix_at(0));
}

TEST_CASE("blockage: self-region covering everything costs exactly 30 dB") {
  beamforming::ArrayConfig tx{4, 4}, rx{2, 2};
  auto st = make_channel(ScenarioKind::UMa, LosCondition::Nlos, 8, tx, rx);
  BlockageState blk;
  BlockingRegion self;
  self.self = true;
  self.attenuation_db = 30.0;
  self.span_az_rad = 2 * M_PI;
  self.span_el_rad = 2 * M_PI;
  blk.regions.push_back(self);
  auto out = apply_blockage(st, blk, 0.0107);
  const double before = st.total_power();
  const double after = out.total_power();
  CHECK(lin_to_db(before / after) == doctest::Approx(30.0).epsilon(1e-9));
}

TEST_CASE("blocking one of two equal clusters drops total power ~3 dB") {
  // Oracle: 10*log10(2/(1+10^-3)) = 3.006 dB.
  beamforming::ArrayConfig one{1, 1};
  auto st = make_channel(ScenarioKind::UMa, LosCondition::Nlos, 8, one, one);
  Cluster a = st.clusters.front();
  a.power = 0.5;
  a.aoa_az = 0.0;
  a.aoa_el = 0.0;
  Cluster b = a;
  b.aoa_az = M_PI / 2;
  st.clusters.assign({a, b});
  BlockageState blk;
  BlockingRegion self;
  self.self = true;
  self.attenuation_db = 30.0;
  self.center_az_rad = 0.0;
  self.center_el_rad = 0.0;
  self.span_az_rad = deg_to_rad(30);
  self.span_el_rad = deg_to_rad(30);
  blk.regions.push_back(self);
  auto out = apply_blockage(st, blk, 0.0107);
  const double drop_db = lin_to_db(st.total_power() / out.total_power());
  CHECK(drop_db == doctest::Approx(10.0 * std::log10(2.0 / (1.0 + 1e-3)))
                       .epsilon(1e-6));
}

TEST_CASE("generated blockage has exactly one 30 dB self region") {
  RngManager mgr(31);
  auto rng = mgr.stream("blockage");
  auto st = generate_blockage(params(), uma_scenario(), 4, 3.0,
                              UeOrientation::Portrait, rng);
  int selfs = 0;
  for (const auto& r : st.regions) {
    if (r.self) {
      ++selfs;
      CHECK(r.attenuation_db == 30.0);
    }
  }
  CHECK(selfs == 1);
  CHECK(st.regions.size() == 5);
}

TEST_CASE("trace channel: zero-order hold and bounds") {
  const std::string text =
      "t_s,n_paths\n"
      "0.0,1,-80,1e-7,0.1,0.0,1.0,0.0\n"
      "1.0,1,-90,1e-7,0.1,0.0,1.0,0.0\n"
      "2.0,1,-100,1e-7,0.1,0.0,1.0,0.0\n";
  auto trace = parse_channel_trace(text, "test");
  beamforming::ArrayConfig one{1, 1};

  auto at = [&](double t) {
    return channel_from_trace(trace, t, one, one, 0.0107);
  };
  CHECK(at(0.0).clusters.front().power == doctest::Approx(db_to_lin(-80.0)));
  CHECK(at(1.0).clusters.front().power == doctest::Approx(db_to_lin(-90.0)));
  // Between samples k and k+1 the hold keeps sample k.
  CHECK(at(1.5).clusters.front().power == doctest::Approx(db_to_lin(-90.0)));
  CHECK_THROWS(at(-0.5));

  // Monotone decreasing trace power implies monotone decreasing receive power.
  double prev = 1e9;
  for (double t : {0.0, 1.0, 2.0}) {
    double p = at(t).total_power();
    CHECK(p < prev);
    prev = p;
  }
}

TEST_CASE("malformed trace rows name the offending line") {
  CHECK_THROWS_WITH_AS(
      parse_channel_trace("t_s,n_paths\n0.0,1,-80,1e-7,0.1\n", "bad"),
      doctest::Contains("bad:2"), std::runtime_error);
  CHECK_THROWS_WITH_AS(
      parse_channel_trace("t_s,n_paths\n0.0,1,-80,1e-7,0.1,0,abc,0\n", "bad"),
      doctest::Contains("non-numeric"), std::runtime_error);
}
