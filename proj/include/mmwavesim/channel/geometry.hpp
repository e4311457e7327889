/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef MMWAVESIM_CHANNEL_GEOMETRY_HPP
#define MMWAVESIM_CHANNEL_GEOMETRY_HPP

#include <algorithm>
#include <cmath>

namespace mmwavesim {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const { return std::sqrt(dot(*this)); }
  double norm_2d() const { return std::sqrt(x * x + y * y); }
};

inline double distance_3d(const Vec3& a, const Vec3& b) { return (a - b).norm(); }
inline double distance_2d(const Vec3& a, const Vec3& b) {
  return (a - b).norm_2d();
}

// Unit direction of propagation expressed as azimuth (x-y plane, from +x
// toward +y) and elevation above the horizon.
struct Direction {
  double azimuth_rad = 0.0;
  double elevation_rad = 0.0;

  Vec3 unit() const {
    const double ce = std::cos(elevation_rad);
    return {ce * std::cos(azimuth_rad), ce * std::sin(azimuth_rad),
            std::sin(elevation_rad)};
  }
};

inline Direction direction_between(const Vec3& from, const Vec3& to) {
  const Vec3 d = to - from;
  Direction dir;
  dir.azimuth_rad = std::atan2(d.y, d.x);
  dir.elevation_rad = std::atan2(d.z, d.norm_2d());
  return dir;
}

// Axis-aligned box obstacle.
struct Box {
  Vec3 min_corner;
  Vec3 max_corner;

  // Slab test: does the open segment a-b pass through the box?
  bool intersects_segment(const Vec3& a, const Vec3& b) const {
    const Vec3 d = b - a;
    double t_enter = 0.0, t_exit = 1.0;
    const double lo[3] = {min_corner.x, min_corner.y, min_corner.z};
    const double hi[3] = {max_corner.x, max_corner.y, max_corner.z};
    const double origin[3] = {a.x, a.y, a.z};
    const double delta[3] = {d.x, d.y, d.z};
    for (int i = 0; i < 3; ++i) {
      if (std::abs(delta[i]) < 1e-12) {
        if (origin[i] < lo[i] || origin[i] > hi[i]) return false;
        continue;
      }
      double t1 = (lo[i] - origin[i]) / delta[i];
      double t2 = (hi[i] - origin[i]) / delta[i];
      if (t1 > t2) std::swap(t1, t2);
      t_enter = std::max(t_enter, t1);
      t_exit = std::min(t_exit, t2);
      if (t_enter > t_exit) return false;
    }
    return true;
  }
};

inline double wrap_angle_rad(double a) {
  while (a > M_PI) a -= 2.0 * M_PI;
  while (a < -M_PI) a += 2.0 * M_PI;
  return a;
}

constexpr double deg_to_rad(double d) { return d * M_PI / 180.0; }
constexpr double rad_to_deg(double r) { return r * 180.0 / M_PI; }

}  // namespace mmwavesim

#endif
