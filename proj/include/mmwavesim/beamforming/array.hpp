/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef MMWAVESIM_BEAMFORMING_ARRAY_HPP
#define MMWAVESIM_BEAMFORMING_ARRAY_HPP

#include <Eigen/Dense>
#include <vector>

#include "mmwavesim/channel/geometry.hpp"

namespace mmwavesim::beamforming {

// Uniform planar array in the y-z plane (broadside along +x), half-wavelength
// spacing by default. A 1xN config degenerates to a uniform linear array.
struct ArrayConfig {
  int rows = 1;
  int cols = 1;
  double element_spacing_wl = 0.5;
  double orientation_rad = 0.0;  // mechanical azimuth rotation of broadside

  int num_elements() const { return rows * cols; }
};

// Unit-norm steering vector toward (azimuth, elevation).
Eigen::VectorXcd array_response(const ArrayConfig& cfg, double azimuth_rad,
                                double elevation_rad);

// Element-space response with unit-magnitude entries (norm = sqrt(N)).
// Channel matrices are built from these so matched beamforming yields the
// physical array gain.
Eigen::VectorXcd element_response(const ArrayConfig& cfg, double azimuth_rad,
                                  double elevation_rad);

struct Codebook {
  std::vector<Eigen::VectorXcd> beams;
  std::vector<double> azimuths_rad;

  std::size_t size() const { return beams.size(); }
};

// Uniform azimuth sweep at fixed elevation (the default search codebook
// sweeps only the horizontal plane).
Codebook make_azimuth_codebook(const ArrayConfig& cfg, int num_beams,
                               double elevation_rad = 0.0);

}  // namespace mmwavesim::beamforming

#endif
