/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "mmwavesim/channel/propagation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "mmwavesim/core/units.hpp"

namespace mmwavesim::channel {

namespace {

double breakpoint_distance_m(double h_bs, double h_ut, double env_height_m,
                             double fc_hz) {
  const double hb = h_bs - env_height_m;
  const double hu = h_ut - env_height_m;
  return 4.0 * hb * hu * fc_hz / kSpeedOfLight;
}

double rma_breakpoint_distance_m(double h_bs, double h_ut, double fc_hz) {
  return 2.0 * M_PI * h_bs * h_ut * fc_hz / kSpeedOfLight;
}

double rma_los_pathloss_db(const KeyValueSection& sec, double d3d, double fc_ghz,
                           double h_bs, double h_ut, double fc_hz) {
  const double h = sec.require_double("pl_rma_h_m");
  const double dbp = rma_breakpoint_distance_m(h_bs, h_ut, fc_hz);
  auto pl1 = [&](double d) {
    return 20.0 * std::log10(40.0 * M_PI * d * fc_ghz / 3.0) +
           std::min(0.03 * std::pow(h, 1.72), 10.0) * std::log10(d) -
           std::min(0.044 * std::pow(h, 1.72), 14.77) +
           0.002 * std::log10(h) * d;
  };
  if (d3d <= dbp) return pl1(d3d);
  return pl1(dbp) + 40.0 * std::log10(d3d / dbp);
}

double rma_nlos_pathloss_db(const KeyValueSection& sec, double d3d,
                            double fc_ghz, double h_bs, double h_ut) {
  const double w = sec.require_double("pl_rma_w_m");
  const double h = sec.require_double("pl_rma_h_m");
  return 161.04 - 7.1 * std::log10(w) + 7.5 * std::log10(h) -
         (24.37 - 3.7 * std::pow(h / h_bs, 2.0)) * std::log10(h_bs) +
         (43.42 - 3.1 * std::log10(h_bs)) * (std::log10(d3d) - 3.0) +
         20.0 * std::log10(fc_ghz) -
         (3.2 * std::pow(std::log10(11.75 * h_ut), 2.0) - 4.97);
}

}  // namespace

double los_probability(const ScenarioParams& params, ScenarioKind kind,
                       double d2d_m) {
  const auto& sec = params.section(kind);
  switch (kind) {
    case ScenarioKind::UMa:
    case ScenarioKind::UMi: {
      const double d1 = sec.require_double("los_d1_m");
      const double decay = sec.require_double("los_decay_m");
      if (d2d_m <= d1) return 1.0;
      return d1 / d2d_m + std::exp(-d2d_m / decay) * (1.0 - d1 / d2d_m);
    }
    case ScenarioKind::RMa: {
      const double d1 = sec.require_double("los_d1_m");
      const double decay = sec.require_double("los_decay_m");
      if (d2d_m <= d1) return 1.0;
      return std::exp(-(d2d_m - d1) / decay);
    }
    case ScenarioKind::InHOffice:
    case ScenarioKind::InHMall: {
      const double d0 = sec.require_double("losp_d0_m");
      const double d1 = sec.require_double("losp_d1_m");
      const double k1 = sec.require_double("losp_decay1_m");
      const double k2 = sec.require_double("losp_decay2_m");
      const double scale = sec.require_double("losp_scale");
      if (d2d_m <= d0) return 1.0;
      if (d2d_m < d1) return std::exp(-(d2d_m - d0) / k1);
      return std::exp(-(d2d_m - d1) / k2) * scale;
    }
  }
  return 0.0;
}

LosState determine_los(const Vec3& tx, const Vec3& rx,
                       const std::vector<Box>& obstacles, LosSource mode,
                       const ScenarioParams& params, const Scenario& scenario,
                       RngStream& rng) {
  if (distance_3d(tx, rx) <= 0.0) {
    throw std::runtime_error("determine_los: tx and rx positions coincide");
  }
  LosState state;
  state.source = mode;
  if (scenario.ue_indoor) {
    state.condition = LosCondition::O2I;
    return state;
  }
  if (mode == LosSource::Geometric) {
    bool blocked = false;
    for (const auto& box : obstacles) {
      if (box.intersects_segment(tx, rx)) {
        blocked = true;
        break;
      }
    }
    state.condition = blocked ? LosCondition::Nlos : LosCondition::Los;
    return state;
  }
  const double p =
      los_probability(params, scenario.kind, distance_2d(tx, rx));
  state.condition = rng.uniform() < p ? LosCondition::Los : LosCondition::Nlos;
  return state;
}

double pathloss_db(const ScenarioParams& params, const Scenario& scenario,
                   const LosState& los, double d3d_m, double d2d_m) {
  const auto& sec = params.section(scenario.kind);
  const double min_d2d = sec.require_double("min_d2d_m");
  if (d2d_m < min_d2d) {
    throw std::runtime_error(
        "pathloss_db: 2D distance " + std::to_string(d2d_m) +
        " m below the " + to_string(scenario.kind) + " model minimum of " +
        std::to_string(min_d2d) + " m");
  }
  const double fc_ghz = scenario.carrier_ghz();
  const double h_bs = scenario.enb_height_m;
  const double h_ut = scenario.ue_height_m;

  double pl_los;
  if (scenario.kind == ScenarioKind::RMa) {
    pl_los = rma_los_pathloss_db(sec, d3d_m, fc_ghz, h_bs, h_ut,
                                 scenario.carrier_hz);
  } else if (scenario.kind == ScenarioKind::InHOffice ||
             scenario.kind == ScenarioKind::InHMall) {
    pl_los = sec.require_double("pl_los_b1") +
             sec.require_double("pl_los_a1") * std::log10(d3d_m) +
             sec.require_double("pl_los_f") * std::log10(fc_ghz);
  } else {
    const double env_h = sec.require_double("pl_env_height_m");
    const double dbp =
        breakpoint_distance_m(h_bs, h_ut, env_h, scenario.carrier_hz);
    if (d2d_m <= dbp) {
      pl_los = sec.require_double("pl_los_b1") +
               sec.require_double("pl_los_a1") * std::log10(d3d_m) +
               sec.require_double("pl_los_f") * std::log10(fc_ghz);
    } else {
      const double dh = h_bs - h_ut;
      pl_los = sec.require_double("pl_los_b2") +
               sec.require_double("pl_los_a2") * std::log10(d3d_m) +
               sec.require_double("pl_los_f") * std::log10(fc_ghz) -
               sec.require_double("pl_los_bp_sub") *
                   std::log10(dbp * dbp + dh * dh);
    }
  }

  if (los.condition == LosCondition::Los) return pl_los;

  double pl_nlos;
  if (scenario.optional_nlos_pathloss) {
    pl_nlos = sec.require_double("pl_nlos_opt_b") +
              sec.require_double("pl_nlos_opt_a") * std::log10(d3d_m) +
              sec.require_double("pl_nlos_opt_f") * std::log10(fc_ghz);
  } else if (scenario.kind == ScenarioKind::RMa) {
    pl_nlos = rma_nlos_pathloss_db(sec, d3d_m, fc_ghz, h_bs, h_ut);
  } else {
    pl_nlos = sec.require_double("pl_nlos_b") +
              sec.require_double("pl_nlos_a") * std::log10(d3d_m) +
              sec.require_double("pl_nlos_f") * std::log10(fc_ghz);
    const auto* hut_coef = sec.find("pl_nlos_hut");
    if (hut_coef) {
      pl_nlos -= sec.require_double("pl_nlos_hut") * (h_ut - 1.5);
    }
  }
  // NLOS never undercuts the LOS curve.
  double pl = std::max(pl_los, pl_nlos);
  if (los.condition == LosCondition::O2I) {
    pl += o2i_loss_db(params, scenario, scenario.o2i_depth_m);
  }
  return pl;
}

double o2i_loss_db(const ScenarioParams& params, const Scenario& scenario,
                   double indoor_depth_m) {
  const auto& sec = params.o2i();
  const double fc_ghz = scenario.carrier_ghz();
  const double l_glass = sec.require_double("glass_loss_a_db") +
                         sec.require_double("glass_loss_b_db_per_ghz") * fc_ghz;
  const double l_concrete =
      sec.require_double("concrete_loss_a_db") +
      sec.require_double("concrete_loss_b_db_per_ghz") * fc_ghz;
  const double glass_frac = sec.require_double("glass_fraction");
  const double tw =
      5.0 - 10.0 * std::log10(glass_frac * std::pow(10.0, -l_glass / 10.0) +
                              (1.0 - glass_frac) *
                                  std::pow(10.0, -l_concrete / 10.0));
  return tw + sec.require_double("indoor_loss_db_per_m") * indoor_depth_m;
}

ShadowingState init_shadowing(double sigma_db, double d_cor_m, double x_m,
                              double y_m, RngStream& rng) {
  ShadowingState s;
  s.sigma_db = sigma_db;
  s.d_cor_m = d_cor_m;
  s.last_x_m = x_m;
  s.last_y_m = y_m;
  s.value_db = sigma_db * rng.normal();
  s.initialized = true;
  return s;
}

ShadowingState update_shadowing(const ShadowingState& state, double new_x_m,
                                double new_y_m, RngStream& rng) {
  if (state.d_cor_m <= 0.0 || state.sigma_db < 0.0) {
    throw std::invalid_argument("update_shadowing: d_cor must be positive");
  }
  ShadowingState next = state;
  const double dx = new_x_m - state.last_x_m;
  const double dy = new_y_m - state.last_y_m;
  const double dd = std::sqrt(dx * dx + dy * dy);
  if (dd > 0.0) {
    const double r = std::exp(-dd / state.d_cor_m);
    next.value_db = r * state.value_db +
                    std::sqrt(1.0 - r * r) * state.sigma_db * rng.normal();
    next.last_x_m = new_x_m;
    next.last_y_m = new_y_m;
  }
  return next;
}

}  // namespace mmwavesim::channel
