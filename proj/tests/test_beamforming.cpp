/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>

#include "mmwavesim/beamforming/beams.hpp"

using namespace mmwavesim;
using namespace mmwavesim::beamforming;

namespace {

Eigen::MatrixXcd random_complex(int rows, int cols, RngStream& rng) {
  Eigen::MatrixXcd m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      m(r, c) = std::complex<double>(rng.normal(), rng.normal());
    }
  }
  return m;
}

}  // namespace

TEST_CASE("1x1 array response is the scalar 1") {
  ArrayConfig one{1, 1};
  auto a = array_response(one, 0.7, -0.2);
  REQUIRE(a.size() == 1);
  CHECK(std::abs(a[0] - std::complex<double>(1.0, 0.0)) < 1e-12);
}

TEST_CASE("broadside steering gives equal phases on a linear array") {
  ArrayConfig ula{1, 8};
  auto a = array_response(ula, 0.0, 0.0);
  for (int i = 1; i < 8; ++i) {
    CHECK(std::abs(a[i] - a[0]) < 1e-12);
  }
  CHECK(a.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("responses a beamwidth apart decorrelate on an 8-element line") {
  // Oracle: the inner product of two steering vectors is a Dirichlet kernel
  // |sin(N pi d du) / (N sin(pi d du))| with du the sin-azimuth separation.
  ArrayConfig ula{1, 8};
  const double az1 = 0.0;
  const double beamwidth = 2.0 / 8.0;  // null-to-null/2 in sin space, d=0.5
  const double az2 = std::asin(std::sin(az1) + beamwidth * 0.8);
  auto a1 = array_response(ula, az1, 0.0);
  auto a2 = array_response(ula, az2, 0.0);
  const double inner = std::abs((a1.adjoint() * a2)(0, 0));
  const double du = std::sin(az2) - std::sin(az1);
  const double n = 8.0, d = 0.5;
  const double dirichlet = std::abs(std::sin(n * M_PI * d * du) /
                                    (n * std::sin(M_PI * d * du)));
  CHECK(inner == doctest::Approx(dirichlet).epsilon(1e-9));
  CHECK(inner <= 0.8);
}

TEST_CASE("bf_gain of a scalar channel is |h|^2 and nulls are exact") {
  Eigen::MatrixXcd h(1, 1);
  h(0, 0) = std::complex<double>(0.6, -0.8);
  Eigen::VectorXcd w(1);
  w[0] = 1.0;
  CHECK(bf_gain(h, w, w) == doctest::Approx(1.0).epsilon(1e-12));

  // rx weight orthogonal to H*tx gives zero gain
  Eigen::MatrixXcd h2(2, 1);
  h2(0, 0) = 1.0;
  h2(1, 0) = 0.0;
  Eigen::VectorXcd tx(1), rx(2);
  tx[0] = 1.0;
  rx[0] = 0.0;
  rx[1] = 1.0;
  CHECK(bf_gain(h2, tx, rx) == doctest::Approx(0.0));
}

TEST_CASE("bf_gain rejects dimension mismatches") {
  Eigen::MatrixXcd h(2, 3);
  Eigen::VectorXcd tx(2), rx(2);
  CHECK_THROWS_AS(bf_gain(h, tx, rx), std::invalid_argument);
}

TEST_CASE("bf_gain is invariant to global phase rotations") {
  RngManager mgr(3);
  auto rng = mgr.stream("bf");
  auto h = random_complex(4, 4, rng);
  Eigen::VectorXcd tx = random_complex(4, 1, rng);
  Eigen::VectorXcd rx = random_complex(4, 1, rng);
  tx.normalize();
  rx.normalize();
  const double g = bf_gain(h, tx, rx);
  const std::complex<double> rot = std::polar(1.0, 1.234);
  CHECK(bf_gain(h, (tx * rot).eval(), rx) == doctest::Approx(g).epsilon(1e-12));
  CHECK(bf_gain(h, tx, (rx * rot).eval()) == doctest::Approx(g).epsilon(1e-12));
}

TEST_CASE("single-beam codebooks select the only pair") {
  ArrayConfig tx_cfg{1, 4}, rx_cfg{1, 2};
  Codebook tx_cb = make_azimuth_codebook(tx_cfg, 1);
  Codebook rx_cb = make_azimuth_codebook(rx_cfg, 1);
  RngManager mgr(4);
  auto rng = mgr.stream("bf");
  auto h = random_complex(2, 4, rng);
  auto pair = beam_search(h, tx_cb, rx_cb);
  CHECK(pair.tx_index == 0);
  CHECK(pair.rx_index == 0);
}

TEST_CASE("rank-1 channel built from codebook members selects those members") {
  // A full-circle azimuth sweep contains front-back aliased beams (equal
  // sin-azimuth), so the assertion is on the achieved gain: by
  // Cauchy-Schwarz no pair can beat the constructing members.
  ArrayConfig tx_cfg{1, 8}, rx_cfg{1, 4};
  Codebook tx_cb = make_azimuth_codebook(tx_cfg, 16);
  Codebook rx_cb = make_azimuth_codebook(rx_cfg, 8);
  const int ti = 5, ri = 2;
  Eigen::MatrixXcd h = rx_cb.beams[ri] * tx_cb.beams[ti].adjoint();
  auto pair = beam_search(h, tx_cb, rx_cb);
  const double got = bf_gain(h, pair.tx, pair.rx);
  const double constructed = bf_gain(h, tx_cb.beams[ti], rx_cb.beams[ri]);
  CHECK(got == doctest::Approx(constructed).epsilon(1e-12));
  CHECK(constructed == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("beam search matches exhaustive pair enumeration") {
  // Brute-force oracle over all 64 pairs of an 8x8 grid on a random channel,
  // with the same lowest-(tx,rx)-index tie rule.
  ArrayConfig tx_cfg{2, 2}, rx_cfg{2, 2};
  Codebook tx_cb = make_azimuth_codebook(tx_cfg, 8);
  Codebook rx_cb = make_azimuth_codebook(rx_cfg, 8);
  RngManager mgr(6);
  auto rng = mgr.stream("bf");
  for (int trial = 0; trial < 25; ++trial) {
    auto h = random_complex(4, 4, rng);
    auto pair = beam_search(h, tx_cb, rx_cb);
    int best_t = -1, best_r = -1;
    double best = -1.0;
    for (int t = 0; t < 8; ++t) {
      for (int r = 0; r < 8; ++r) {
        const double g = bf_gain(h, tx_cb.beams[t], rx_cb.beams[r]);
        if (g > best) {
          best = g;
          best_t = t;
          best_r = r;
        }
      }
    }
    CHECK(pair.tx_index == best_t);
    CHECK(pair.rx_index == best_r);
    // Selected gain dominates every other pair.
    CHECK(bf_gain(h, pair.tx, pair.rx) == doctest::Approx(best));
  }
}

TEST_CASE("power method returns unit vectors even for degenerate spectra") {
  RngManager mgr(7);
  auto rng = mgr.stream("pm");
  Eigen::MatrixXcd q = Eigen::MatrixXcd::Identity(4, 4);
  auto v = power_method(q, 10, rng);
  CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("power method recovers a rank-1 direction") {
  RngManager mgr(8);
  auto rng = mgr.stream("pm");
  Eigen::VectorXcd q = random_complex(5, 1, rng);
  q.normalize();
  Eigen::MatrixXcd m = q * q.adjoint();
  auto v = power_method(m, 10, rng);
  CHECK(std::abs((v.adjoint() * q)(0, 0)) > 1.0 - 1e-9);
}

TEST_CASE("power method aligns with the dense eigensolver on random PSD") {
  // Dense eigendecomposition oracle on random Hermitian PSD 4x4 matrices.
  RngManager mgr(9);
  auto rng = mgr.stream("pm");
  for (int trial = 0; trial < 20; ++trial) {
    auto b = random_complex(4, 4, rng);
    Eigen::MatrixXcd q = b * b.adjoint();
    auto v = power_method(q, 5000, rng, 1e-14);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(q);
    Eigen::VectorXcd dominant = es.eigenvectors().col(3);
    CHECK(std::abs((v.adjoint() * dominant)(0, 0)) > 1.0 - 1e-6);
  }
}

TEST_CASE("covariance beams from a single channel approach the SVD bound") {
  RngManager mgr(10);
  auto rng = mgr.stream("pm");
  for (int trial = 0; trial < 10; ++trial) {
    auto h = random_complex(6, 8, rng);
    auto pair = covariance_beams({h}, 5000, rng);
    CHECK(pair.tx.norm() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(pair.rx.norm() == doctest::Approx(1.0).epsilon(1e-9));
    const double cov_gain = bf_gain(h, pair.tx, pair.rx);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h);
    const double sigma_max_sq = svd.singularValues()[0] * svd.singularValues()[0];
    CHECK(cov_gain <= sigma_max_sq * (1.0 + 1e-9));
    CHECK(cov_gain >= sigma_max_sq * (1.0 - 1e-6));

    // Search over a finite grid cannot beat the covariance optimum.
    ArrayConfig tx_cfg{2, 4}, rx_cfg{2, 3};
    Codebook tx_cb = make_azimuth_codebook(tx_cfg, 16);
    Codebook rx_cb = make_azimuth_codebook(rx_cfg, 8);
    auto searched = beam_search(h, tx_cb, rx_cb);
    CHECK(bf_gain(h, searched.tx, searched.rx) <= cov_gain * (1.0 + 1e-9));
  }
}

TEST_CASE("codebook members are unit norm") {
  ArrayConfig cfg{4, 4};
  auto cb = make_azimuth_codebook(cfg, 16);
  REQUIRE(cb.size() == 16);
  for (const auto& b : cb.beams) {
    CHECK(b.norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
}
