/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef MMWAVESIM_BEAMFORMING_BEAMS_HPP
#define MMWAVESIM_BEAMFORMING_BEAMS_HPP

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "mmwavesim/beamforming/array.hpp"
#include "mmwavesim/core/rng.hpp"

namespace mmwavesim::beamforming {

struct BeamPair {
  Eigen::VectorXcd tx;
  Eigen::VectorXcd rx;
  int tx_index = -1;  // codebook indices when selected by search
  int rx_index = -1;
};

// Directional gain |w_rx^H H w_tx|^2.
double bf_gain(const Eigen::MatrixXcd& channel, const Eigen::VectorXcd& tx,
               const Eigen::VectorXcd& rx);

// Exhaustive codebook sweep; returns the pair with the highest gain, ties
// broken by the lowest (tx, rx) index pair.
BeamPair beam_search(const Eigen::MatrixXcd& channel, const Codebook& tx_cb,
                     const Codebook& rx_cb);

// Dominant eigenvector by power iteration: random unit start, repeated
// multiplication by the matrix, renormalizing each step. Stops early once
// successive iterates differ by less than `tolerance` in norm.
Eigen::VectorXcd power_method(const Eigen::MatrixXcd& hermitian,
                              int max_iterations, RngStream& rng,
                              double tolerance = 1e-9);

// Long-term covariance beams: averages Q_tx = E[H^H H] and Q_rx = E[H H^H]
// over the channel history, then extracts the maximal eigenvectors.
BeamPair covariance_beams(const std::vector<Eigen::MatrixXcd>& channel_history,
                          int iterations, RngStream& rng);

}  // namespace mmwavesim::beamforming

#endif
