/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "mmwavesim/channel/fading.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>

#include "mmwavesim/core/units.hpp"

namespace mmwavesim::channel {

namespace {

using std::complex;

// Fixed ray offset angles (in units of the per-cluster spread).
constexpr double kRayOffsets[kRaysPerCluster] = {
    0.0447,  -0.0447, 0.1413,  -0.1413, 0.2492,  -0.2492, 0.3715,
    -0.3715, 0.5129,  -0.5129, 0.6797,  -0.6797, 0.8844,  -0.8844,
    1.1481,  -1.1481, 1.5195,  -1.5195, 2.1551,  -2.1551};

// Azimuth angle-generation normalization constant vs. cluster count.
double c_phi(int n) {
  static const std::pair<int, double> table[] = {
      {4, 0.779}, {5, 0.860},  {8, 1.018},  {10, 1.090}, {11, 1.123},
      {12, 1.146}, {14, 1.190}, {15, 1.211}, {16, 1.226}, {19, 1.273},
      {20, 1.289}};
  double best = table[0].second;
  int best_gap = 1 << 30;
  for (auto [k, v] : table) {
    int gap = std::abs(k - n);
    if (gap < best_gap) {
      best_gap = gap;
      best = v;
    }
  }
  return best;
}

double c_theta(int n) {
  static const std::pair<int, double> table[] = {
      {8, 0.889}, {10, 0.957}, {11, 1.031}, {12, 1.104},
      {15, 1.1088}, {19, 1.184}, {20, 1.178}};
  double best = table[0].second;
  int best_gap = 1 << 30;
  for (auto [k, v] : table) {
    int gap = std::abs(k - n);
    if (gap < best_gap) {
      best_gap = gap;
      best = v;
    }
  }
  return best;
}

double doppler_hz(const Vec3& velocity, double aoa_az, double aoa_el,
                  double wavelength) {
  const Vec3 dir = Direction{aoa_az, aoa_el}.unit();
  return velocity.dot(dir) / wavelength;
}

Eigen::MatrixXcd cluster_coupling(const Cluster& cl,
                                  const beamforming::ArrayConfig& tx_array,
                                  const beamforming::ArrayConfig& rx_array) {
  const int u = rx_array.num_elements();
  const int s = tx_array.num_elements();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(u, s);
  if (cl.specular) {
    const auto rx = beamforming::element_response(rx_array, cl.aoa_az, cl.aoa_el);
    const auto tx = beamforming::element_response(tx_array, cl.aod_az, cl.aod_el);
    const complex<double> phase(std::cos(cl.rays.front().phase),
                                std::sin(cl.rays.front().phase));
    m = phase * rx * tx.adjoint();
    return m;
  }
  for (const auto& ray : cl.rays) {
    const auto rx = beamforming::element_response(rx_array, ray.aoa_az, ray.aoa_el);
    const auto tx = beamforming::element_response(tx_array, ray.aod_az, ray.aod_el);
    const complex<double> phase(std::cos(ray.phase), std::sin(ray.phase));
    m.noalias() += phase * rx * tx.adjoint();
  }
  m /= std::sqrt(static_cast<double>(cl.rays.size()));
  return m;
}

struct AngleDraw {
  double central;
  std::vector<double> ray_offsets;
};

// Inverse-envelope cluster angle generation with per-ray offsets.
std::vector<AngleDraw> draw_angles(const std::vector<double>& powers,
                                   double spread_deg, double c_norm,
                                   double los_angle_rad, double ray_spread_deg,
                                   bool los, double k_db, RngStream& rng) {
  const double max_p = *std::max_element(powers.begin(), powers.end());
  double c = c_norm;
  if (los) {
    c *= 1.1035 - 0.028 * k_db - 0.002 * k_db * k_db +
         0.0001 * k_db * k_db * k_db;
  }
  std::vector<AngleDraw> out;
  out.reserve(powers.size());
  std::vector<double> raw(powers.size());
  std::vector<double> sign(powers.size());
  std::vector<double> jitter(powers.size());
  for (std::size_t n = 0; n < powers.size(); ++n) {
    raw[n] = 2.0 * (spread_deg / 1.4) *
             std::sqrt(-std::log(powers[n] / max_p)) / c;
    sign[n] = rng.uniform() < 0.5 ? -1.0 : 1.0;
    jitter[n] = rng.normal() * spread_deg / 7.0;
  }
  // In LOS the first cluster is pinned to the LOS direction.
  const double align =
      los ? sign[0] * raw[0] + jitter[0] : 0.0;
  for (std::size_t n = 0; n < powers.size(); ++n) {
    AngleDraw d;
    const double deg = sign[n] * raw[n] + jitter[n] - align;
    d.central = wrap_angle_rad(los_angle_rad + deg_to_rad(deg));
    d.ray_offsets.reserve(kRaysPerCluster);
    for (double off : kRayOffsets) {
      d.ray_offsets.push_back(deg_to_rad(ray_spread_deg * off));
    }
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace

double ChannelState::total_power() const {
  double sum = 0.0;
  for (const auto& c : clusters) {
    sum += c.power * db_to_lin(-c.blocked_attenuation_db);
  }
  return sum;
}

Eigen::MatrixXcd ChannelState::matrix_at(TimeNs t, double freq_offset_hz) const {
  const int u = rx_array.num_elements();
  const int s = tx_array.num_elements();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(u, s);
  const double dt = ns_to_sec(t - generated_at);
  for (const auto& cl : clusters) {
    const double amp =
        std::sqrt(cl.power * db_to_lin(-cl.blocked_attenuation_db));
    const double phase = cl.doppler_phase_accum_rad +
                         2.0 * M_PI * (cl.doppler_hz * dt -
                                       freq_offset_hz * cl.delay_s);
    h.noalias() +=
        (amp * std::polar(1.0, phase)) * cl.coupling;
  }
  return h;
}

double BeamCoupling::gain_at(TimeNs t, double freq_offset_hz) const {
  const double dt = ns_to_sec(t - state->generated_at);
  complex<double> acc(0.0, 0.0);
  for (std::size_t n = 0; n < cluster_terms.size(); ++n) {
    const auto& cl = state->clusters[n];
    const double amp =
        std::sqrt(cl.power * db_to_lin(-cl.blocked_attenuation_db));
    const double phase = cl.doppler_phase_accum_rad +
                         2.0 * M_PI * (cl.doppler_hz * dt -
                                       freq_offset_hz * cl.delay_s);
    acc += amp * std::polar(1.0, phase) * cluster_terms[n];
  }
  return std::norm(acc);
}

BeamCoupling couple_beams(const ChannelState& state,
                          const Eigen::VectorXcd& rx_weights,
                          const Eigen::VectorXcd& tx_weights) {
  if (rx_weights.size() != state.rx_array.num_elements() ||
      tx_weights.size() != state.tx_array.num_elements()) {
    throw std::invalid_argument(
        "couple_beams: beam dimensions do not match the channel arrays");
  }
  BeamCoupling bc;
  bc.state = &state;
  bc.cluster_terms.reserve(state.clusters.size());
  for (const auto& cl : state.clusters) {
    bc.cluster_terms.push_back(
        (rx_weights.adjoint() * cl.coupling * tx_weights)(0, 0));
  }
  return bc;
}

ChannelState generate_channel(const LinkGeometry& link,
                              const ScenarioParams& params,
                              const Scenario& scenario, const LosState& los,
                              const beamforming::ArrayConfig& tx_array,
                              const beamforming::ArrayConfig& rx_array,
                              TimeNs now, RngStream& rng) {
  const bool is_los = los.condition == LosCondition::Los;
  const double fc_ghz = scenario.carrier_ghz();
  const ScenarioKind kind = scenario.kind;
  const std::string suffix = is_los ? "_los" : "_nlos";

  ChannelState state;
  state.condition = los.condition;
  state.wavelength_m = scenario.wavelength_m();
  state.generated_at = now;
  state.tx_array = tx_array;
  state.rx_array = rx_array;

  // Large-scale fading draws.
  const double ds =
      std::pow(10.0, params.fading_value(kind, "lgds_mu" + suffix, fc_ghz) +
                         params.fading_value(kind, "lgds_sigma" + suffix, fc_ghz) *
                             rng.normal());
  const double asd_deg = std::min(
      104.0,
      std::pow(10.0, params.fading_value(kind, "lgasd_mu" + suffix, fc_ghz) +
                         params.fading_value(kind, "lgasd_sigma" + suffix, fc_ghz) *
                             rng.normal()));
  const double asa_deg = std::min(
      104.0,
      std::pow(10.0, params.fading_value(kind, "lgasa_mu" + suffix, fc_ghz) +
                         params.fading_value(kind, "lgasa_sigma" + suffix, fc_ghz) *
                             rng.normal()));
  const double zsa_deg = std::min(
      52.0,
      std::pow(10.0, params.fading_value(kind, "lgzsa_mu" + suffix, fc_ghz) +
                         params.fading_value(kind, "lgzsa_sigma" + suffix, fc_ghz) *
                             rng.normal()));
  // Departure zenith spread approximated by the arrival-side statistics.
  const double zsd_deg = zsa_deg;

  const auto& sec = params.section(kind);
  const double r_tau = sec.require_double(is_los ? "r_tau_los" : "r_tau_nlos");
  const int num_clusters = static_cast<int>(
      sec.get_int(is_los ? "num_clusters_los" : "num_clusters_nlos", 12));
  const double zeta_db = sec.require_double("per_cluster_shadowing_db");
  double k_db = 0.0;
  if (is_los) {
    k_db = sec.require_double("k_mu_db") +
           sec.require_double("k_sigma_db") * rng.normal();
  }
  state.k_factor_db = k_db;
  state.delay_spread_s = ds;
  state.r_tau = r_tau;

  // Cluster delays: exponential profile, sorted, first at zero.
  std::vector<double> raw_delays(num_clusters);
  for (auto& d : raw_delays) {
    double u;
    do {
      u = rng.uniform();
    } while (u <= 0.0);
    d = -r_tau * ds * std::log(u);
  }
  std::sort(raw_delays.begin(), raw_delays.end());
  const double d0 = raw_delays.front();
  for (auto& d : raw_delays) d -= d0;

  // Cluster powers from the (unscaled) delays plus per-cluster shadowing.
  std::vector<double> powers(num_clusters);
  std::vector<double> shadow_db(num_clusters);
  for (int n = 0; n < num_clusters; ++n) {
    shadow_db[n] = zeta_db * rng.normal();
    powers[n] = std::exp(-raw_delays[n] * (r_tau - 1.0) / (r_tau * ds)) *
                db_to_lin(-shadow_db[n]);
  }
  // Drop clusters more than 25 dB below the strongest.
  const double pmax = *std::max_element(powers.begin(), powers.end());
  std::vector<int> keep;
  for (int n = 0; n < num_clusters; ++n) {
    if (powers[n] >= pmax * db_to_lin(-25.0)) keep.push_back(n);
  }
  std::vector<double> delays_kept, powers_kept, shadow_kept;
  for (int n : keep) {
    delays_kept.push_back(raw_delays[n]);
    powers_kept.push_back(powers[n]);
    shadow_kept.push_back(shadow_db[n]);
  }

  double psum = std::accumulate(powers_kept.begin(), powers_kept.end(), 0.0);
  for (auto& p : powers_kept) p /= psum;

  // In LOS, the specular component takes the Ricean fraction and the diffuse
  // part shrinks accordingly; the total stays normalized to one.
  const double k_lin = is_los ? db_to_lin(k_db) : 0.0;
  if (is_los) {
    for (auto& p : powers_kept) p /= (k_lin + 1.0);
    powers_kept[0] += k_lin / (k_lin + 1.0);
  }

  // LOS delay scaling (applied after power generation).
  if (is_los) {
    const double c_tau = 0.7705 - 0.0433 * k_db + 0.0002 * k_db * k_db +
                         0.000017 * k_db * k_db * k_db;
    for (auto& d : delays_kept) d /= std::max(c_tau, 0.2);
  }

  const Direction aoa_los = direction_between(link.rx_position_m, link.tx_position_m);
  const Direction aod_los = direction_between(link.tx_position_m, link.rx_position_m);

  const int n_kept = static_cast<int>(delays_kept.size());
  auto az_aoa = draw_angles(powers_kept, asa_deg, c_phi(n_kept),
                            aoa_los.azimuth_rad,
                            sec.require_double(is_los ? "c_asa_los_deg"
                                                      : "c_asa_nlos_deg"),
                            is_los, k_db, rng);
  auto az_aod = draw_angles(powers_kept, asd_deg, c_phi(n_kept),
                            aod_los.azimuth_rad,
                            sec.require_double(is_los ? "c_asd_los_deg"
                                                      : "c_asd_nlos_deg"),
                            is_los, k_db, rng);
  auto el_aoa = draw_angles(powers_kept, zsa_deg, c_theta(n_kept),
                            aoa_los.elevation_rad,
                            sec.require_double(is_los ? "c_zsa_los_deg"
                                                      : "c_zsa_nlos_deg"),
                            is_los, k_db, rng);
  auto el_aod = draw_angles(powers_kept, zsd_deg, c_theta(n_kept),
                            aod_los.elevation_rad, 0.375 * zsd_deg, is_los,
                            k_db, rng);

  state.clusters.reserve(n_kept);
  for (int n = 0; n < n_kept; ++n) {
    Cluster cl;
    cl.delay_s = delays_kept[n];
    cl.power = powers_kept[n];
    cl.power_shadow_db = shadow_kept[n];
    cl.aoa_az = az_aoa[n].central;
    cl.aod_az = az_aod[n].central;
    cl.aoa_el = el_aoa[n].central;
    cl.aod_el = el_aod[n].central;

    if (is_los && n == 0) {
      // Deterministic specular component at the exact LOS geometry, with a
      // distance-locked phase.
      cl.specular = true;
      cl.aoa_az = aoa_los.azimuth_rad;
      cl.aoa_el = aoa_los.elevation_rad;
      cl.aod_az = aod_los.azimuth_rad;
      cl.aod_el = aod_los.elevation_rad;
      Ray r;
      const double d3d = distance_3d(link.tx_position_m, link.rx_position_m);
      r.phase = wrap_angle_rad(-2.0 * M_PI * d3d / state.wavelength_m);
      r.aoa_az = cl.aoa_az;
      r.aoa_el = cl.aoa_el;
      r.aod_az = cl.aod_az;
      r.aod_el = cl.aod_el;
      cl.rays.push_back(r);
    } else {
      // Random coupling of departure and arrival rays.
      std::vector<int> perm_az(kRaysPerCluster), perm_el(kRaysPerCluster);
      std::iota(perm_az.begin(), perm_az.end(), 0);
      std::iota(perm_el.begin(), perm_el.end(), 0);
      rng.shuffle(perm_az);
      rng.shuffle(perm_el);
      cl.rays.reserve(kRaysPerCluster);
      for (int m = 0; m < kRaysPerCluster; ++m) {
        Ray r;
        r.aoa_az = wrap_angle_rad(cl.aoa_az + az_aoa[n].ray_offsets[m]);
        r.aoa_el = cl.aoa_el + el_aoa[n].ray_offsets[m];
        r.aod_az = wrap_angle_rad(cl.aod_az + az_aod[n].ray_offsets[perm_az[m]]);
        r.aod_el = cl.aod_el + el_aod[n].ray_offsets[perm_el[m]];
        r.phase = rng.uniform(-M_PI, M_PI);
        cl.rays.push_back(r);
      }
    }
    cl.doppler_hz = doppler_hz(link.rx_velocity_mps, cl.aoa_az, cl.aoa_el,
                               state.wavelength_m);
    cl.coupling = cluster_coupling(cl, tx_array, rx_array);
    state.clusters.push_back(std::move(cl));
  }
  return state;
}

namespace {

// Rotates a direction as seen from a receiver that moved by `delta` while
// the source stays at distance `dist` along the original direction.
Direction rotate_direction(double az, double el, const Vec3& delta,
                           double dist) {
  const Vec3 u = Direction{az, el}.unit();
  const Vec3 p = u * dist - delta;
  Direction d;
  d.azimuth_rad = std::atan2(p.y, p.x);
  d.elevation_rad = std::atan2(p.z, p.norm_2d());
  return d;
}

}  // namespace

ChannelState advance_spatial_consistency(const ChannelState& state,
                                         double dt_s,
                                         const LinkGeometry& link) {
  ChannelState next = state;
  const Vec3 delta = link.rx_velocity_mps * dt_s;
  if (delta.norm() == 0.0) return next;

  const double dist =
      std::max(distance_3d(link.tx_position_m, link.rx_position_m), 1.0);

  // Doppler phase accumulated so far is banked so the rate can change
  // without a phase jump.
  next.generated_at = state.generated_at + sec_to_ns(dt_s);

  for (auto& cl : next.clusters) {
    cl.doppler_phase_accum_rad = wrap_angle_rad(
        cl.doppler_phase_accum_rad + 2.0 * M_PI * cl.doppler_hz * dt_s);
    // Delay drift from the radial velocity component.
    const Vec3 dir = Direction{cl.aoa_az, cl.aoa_el}.unit();
    const double radial = link.rx_velocity_mps.dot(dir);
    cl.delay_s = std::max(0.0, cl.delay_s - radial * dt_s / kSpeedOfLight);
    // Arrival angles rotate with the apparent source position; departure
    // angles rotate with the receiver as seen from the transmitter.
    const Direction aoa =
        rotate_direction(cl.aoa_az, cl.aoa_el, delta, dist);
    const Direction aod =
        rotate_direction(cl.aod_az, cl.aod_el, delta * -1.0, dist);
    const double daz_aoa = aoa.azimuth_rad - cl.aoa_az;
    const double del_aoa = aoa.elevation_rad - cl.aoa_el;
    const double daz_aod = aod.azimuth_rad - cl.aod_az;
    const double del_aod = aod.elevation_rad - cl.aod_el;
    cl.aoa_az = aoa.azimuth_rad;
    cl.aoa_el = aoa.elevation_rad;
    cl.aod_az = aod.azimuth_rad;
    cl.aod_el = aod.elevation_rad;
    for (auto& ray : cl.rays) {
      ray.aoa_az = wrap_angle_rad(ray.aoa_az + daz_aoa);
      ray.aoa_el += del_aoa;
      ray.aod_az = wrap_angle_rad(ray.aod_az + daz_aod);
      ray.aod_el += del_aod;
    }
    cl.doppler_hz = doppler_hz(link.rx_velocity_mps, cl.aoa_az, cl.aoa_el,
                               state.wavelength_m);
    cl.coupling = cluster_coupling(cl, next.tx_array, next.rx_array);
  }

  // Powers track the drifted delays through the original profile draw.
  if (!next.absolute_power && next.delay_spread_s > 0.0) {
    std::vector<double> p(next.clusters.size());
    double sum = 0.0;
    for (std::size_t n = 0; n < next.clusters.size(); ++n) {
      p[n] = std::exp(-next.clusters[n].delay_s * (next.r_tau - 1.0) /
                      (next.r_tau * next.delay_spread_s)) *
             db_to_lin(-next.clusters[n].power_shadow_db);
      sum += p[n];
    }
    const bool los = next.condition == LosCondition::Los;
    const double k_lin = los ? db_to_lin(next.k_factor_db) : 0.0;
    for (std::size_t n = 0; n < next.clusters.size(); ++n) {
      double frac = p[n] / sum;
      if (los) frac /= (k_lin + 1.0);
      if (los && n == 0) frac += k_lin / (k_lin + 1.0);
      next.clusters[n].power = frac;
    }
  }
  return next;
}

}  // namespace mmwavesim::channel
