/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "mmwavesim/beamforming/beams.hpp"

#include <complex>
#include <stdexcept>

namespace mmwavesim::beamforming {

double bf_gain(const Eigen::MatrixXcd& channel, const Eigen::VectorXcd& tx,
               const Eigen::VectorXcd& rx) {
  if (channel.rows() != rx.size() || channel.cols() != tx.size()) {
    throw std::invalid_argument("bf_gain: dimension mismatch (H is " +
                                std::to_string(channel.rows()) + "x" +
                                std::to_string(channel.cols()) + ")");
  }
  const std::complex<double> v = (rx.adjoint() * channel * tx)(0, 0);
  return std::norm(v);
}

BeamPair beam_search(const Eigen::MatrixXcd& channel, const Codebook& tx_cb,
                     const Codebook& rx_cb) {
  if (tx_cb.beams.empty() || rx_cb.beams.empty()) {
    throw std::invalid_argument("beam_search: codebooks must be nonempty");
  }
  // Evaluated with bf_gain per pair so any external enumeration of the same
  // pairs reproduces the selection bit-exactly, ties included.
  BeamPair best;
  double best_gain = -1.0;
  for (int ti = 0; ti < static_cast<int>(tx_cb.beams.size()); ++ti) {
    for (int ri = 0; ri < static_cast<int>(rx_cb.beams.size()); ++ri) {
      const double g = bf_gain(channel, tx_cb.beams[ti], rx_cb.beams[ri]);
      if (g > best_gain) {
        best_gain = g;
        best.tx_index = ti;
        best.rx_index = ri;
      }
    }
  }
  best.tx = tx_cb.beams[best.tx_index];
  best.rx = rx_cb.beams[best.rx_index];
  return best;
}

Eigen::VectorXcd power_method(const Eigen::MatrixXcd& hermitian,
                              int max_iterations, RngStream& rng,
                              double tolerance) {
  if (max_iterations < 1) {
    throw std::invalid_argument("power_method: need at least one iteration");
  }
  const Eigen::Index n = hermitian.rows();
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v[i] = std::complex<double>(rng.normal(), rng.normal());
  }
  v.normalize();
  for (int it = 0; it < max_iterations; ++it) {
    Eigen::VectorXcd next = hermitian * v;
    const double norm = next.norm();
    if (norm == 0.0) return v;  // degenerate (zero matrix): any unit vector
    next /= norm;
    const double delta = (next - v).norm();
    v = next;
    if (delta < tolerance) break;
  }
  return v;
}

BeamPair covariance_beams(const std::vector<Eigen::MatrixXcd>& channel_history,
                          int iterations, RngStream& rng) {
  if (channel_history.empty()) {
    throw std::invalid_argument("covariance_beams: history must be nonempty");
  }
  const Eigen::Index u = channel_history.front().rows();
  const Eigen::Index s = channel_history.front().cols();
  Eigen::MatrixXcd q_tx = Eigen::MatrixXcd::Zero(s, s);
  Eigen::MatrixXcd q_rx = Eigen::MatrixXcd::Zero(u, u);
  for (const auto& h : channel_history) {
    q_tx.noalias() += h.adjoint() * h;
    q_rx.noalias() += h * h.adjoint();
  }
  q_tx /= static_cast<double>(channel_history.size());
  q_rx /= static_cast<double>(channel_history.size());

  BeamPair pair;
  pair.tx = power_method(q_tx, iterations, rng);
  pair.rx = power_method(q_rx, iterations, rng);
  return pair;
}

}  // namespace mmwavesim::beamforming
