/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "mmwavesim/beamforming/array.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace mmwavesim::beamforming {

Eigen::VectorXcd element_response(const ArrayConfig& cfg, double azimuth_rad,
                                  double elevation_rad) {
  if (cfg.rows < 1 || cfg.cols < 1) {
    throw std::invalid_argument("ArrayConfig: rows and cols must be >= 1");
  }
  const int n = cfg.num_elements();
  Eigen::VectorXcd a(n);
  // Wave direction in array coordinates (columns along y, rows along z).
  const double az = azimuth_rad - cfg.orientation_rad;
  const double uy = std::cos(elevation_rad) * std::sin(az);
  const double uz = std::sin(elevation_rad);
  const double k = 2.0 * M_PI * cfg.element_spacing_wl;
  int idx = 0;
  for (int r = 0; r < cfg.rows; ++r) {
    for (int c = 0; c < cfg.cols; ++c) {
      const double phase = k * (c * uy + r * uz);
      a[idx++] = std::complex<double>(std::cos(phase), std::sin(phase));
    }
  }
  return a;
}

Eigen::VectorXcd array_response(const ArrayConfig& cfg, double azimuth_rad,
                                double elevation_rad) {
  Eigen::VectorXcd a = element_response(cfg, azimuth_rad, elevation_rad);
  return a / std::sqrt(static_cast<double>(cfg.num_elements()));
}

Codebook make_azimuth_codebook(const ArrayConfig& cfg, int num_beams,
                               double elevation_rad) {
  if (num_beams < 1) {
    throw std::invalid_argument("make_azimuth_codebook: need at least one beam");
  }
  Codebook cb;
  cb.beams.reserve(num_beams);
  for (int i = 0; i < num_beams; ++i) {
    const double az = -M_PI + (2.0 * M_PI * i) / num_beams;
    cb.beams.push_back(array_response(cfg, az, elevation_rad));
    cb.azimuths_rad.push_back(az);
  }
  return cb;
}

}  // namespace mmwavesim::beamforming
