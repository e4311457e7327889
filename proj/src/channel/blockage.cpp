/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "mmwavesim/channel/blockage.hpp"

#include <cmath>

namespace mmwavesim::channel {

bool BlockingRegion::contains(double az_rad, double el_rad) const {
  const double daz = std::abs(wrap_angle_rad(az_rad - center_az_rad));
  const double del = std::abs(el_rad - center_el_rad);
  return daz <= span_az_rad / 2.0 && del <= span_el_rad / 2.0;
}

BlockageState generate_blockage(const ScenarioParams& params,
                                const Scenario& scenario, int num_nonself,
                                double blocker_speed_mps,
                                UeOrientation orientation, RngStream& rng) {
  const auto& blk = params.blockage();
  const auto& sec = params.section(scenario.kind);
  BlockageState state;
  state.orientation = orientation;
  state.blocker_distance_m = sec.require_double("blk_blocker_distance_m");

  BlockingRegion self;
  self.self = true;
  const bool portrait = orientation == UeOrientation::Portrait;
  self.span_az_rad = deg_to_rad(blk.require_double(
      portrait ? "self_span_az_portrait_deg" : "self_span_az_landscape_deg"));
  self.span_el_rad = deg_to_rad(blk.require_double(
      portrait ? "self_span_el_portrait_deg" : "self_span_el_landscape_deg"));
  self.center_az_rad = rng.uniform(-M_PI, M_PI);
  self.center_el_rad = deg_to_rad(-20.0);  // body side, below the horizon
  self.attenuation_db = blk.require_double("self_attenuation_db");
  state.regions.push_back(self);

  const double az_min = sec.require_double("blk_nonself_span_az_min_deg");
  const double az_max = sec.require_double("blk_nonself_span_az_max_deg");
  const double el_span = sec.require_double("blk_nonself_span_el_deg");
  for (int k = 0; k < num_nonself; ++k) {
    BlockingRegion r;
    r.center_az_rad = rng.uniform(-M_PI, M_PI);
    r.center_el_rad = 0.0;
    r.span_az_rad = deg_to_rad(rng.uniform(az_min, az_max));
    r.span_el_rad = deg_to_rad(el_span);
    const double direction = rng.uniform() < 0.5 ? -1.0 : 1.0;
    r.angular_velocity_rad_s =
        direction * blocker_speed_mps / state.blocker_distance_m;
    state.regions.push_back(r);
  }
  return state;
}

void advance_blockage(BlockageState& state, double dt_s) {
  for (auto& r : state.regions) {
    if (r.self) continue;
    r.center_az_rad =
        wrap_angle_rad(r.center_az_rad + r.angular_velocity_rad_s * dt_s);
  }
}

double region_attenuation_db(const BlockingRegion& region, double az_rad,
                             double el_rad, double wavelength_m,
                             double blocker_distance_m) {
  if (region.self) return region.attenuation_db;
  // Knife-edge diffraction over the four region edges.
  auto edge_term = [&](double angle_to_edge, double inside_sign) {
    const double cos_arg = std::min(std::abs(angle_to_edge), M_PI / 2.0 - 1e-6);
    const double radicand =
        (M_PI / wavelength_m) * blocker_distance_m *
        (1.0 / std::cos(cos_arg) - 1.0);
    const double t = std::atan(inside_sign * (M_PI / 2.0) * std::sqrt(radicand));
    return t / M_PI;
  };
  const double daz = wrap_angle_rad(az_rad - region.center_az_rad);
  const double del = el_rad - region.center_el_rad;
  const double a1 = daz + region.span_az_rad / 2.0;
  const double a2 = region.span_az_rad / 2.0 - daz;
  const double z1 = del + region.span_el_rad / 2.0;
  const double z2 = region.span_el_rad / 2.0 - del;
  // Inside the region all four distances-to-edge are positive.
  const double f_a = edge_term(a1, a1 > 0 ? 1.0 : -1.0) +
                     edge_term(a2, a2 > 0 ? 1.0 : -1.0);
  const double f_z = edge_term(z1, z1 > 0 ? 1.0 : -1.0) +
                     edge_term(z2, z2 > 0 ? 1.0 : -1.0);
  const double shadowing = f_a * f_z;
  if (shadowing >= 1.0) return 60.0;
  return std::max(0.0, -20.0 * std::log10(1.0 - shadowing));
}

ChannelState apply_blockage(const ChannelState& state,
                            const BlockageState& blockage,
                            double wavelength_m) {
  ChannelState next = state;
  for (auto& cl : next.clusters) {
    double atten = 0.0;
    for (const auto& region : blockage.regions) {
      if (region.contains(cl.aoa_az, cl.aoa_el)) {
        atten += region_attenuation_db(region, cl.aoa_az, cl.aoa_el,
                                       wavelength_m,
                                       blockage.blocker_distance_m);
      }
    }
    cl.blocked_attenuation_db = atten;
  }
  return next;
}

}  // namespace mmwavesim::channel
