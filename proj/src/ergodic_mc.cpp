// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The urllc-sched Authors

// Random-matrix check of the deterministic-equivalent rate. Independent of
// the closed form: draws channels, builds the RZF precoder, averages log2(1 + SINR).

#include <cmath>
#include <complex>
#include <random>

#include "urllc/channel.hpp"
#include "urllc/errors.hpp"

namespace urllc {
namespace {

using Cplx = std::complex<double>;

// CN(0, 1/N) entries.
Eigen::MatrixXcd draw_normalized(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5 / rows));
  Eigen::MatrixXcd out(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      out(r, c) = Cplx(re, im);
    }
  return out;
}

Eigen::MatrixXcd hermitian_sqrt(const Eigen::MatrixXcd& theta) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(theta);
  if (eig.info() != Eigen::Success) throw NumericalError("correlation eigendecomposition failed");
  const Eigen::VectorXd root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * root.asDiagonal() * eig.eigenvectors().adjoint();
}

}  // namespace

std::vector<double> ergodic_rate_mc(const ChannelParams& params, std::span<const double> powers,
                                    int trials, std::uint64_t seed) {
  params.validate();
  const std::size_t m_count = params.ue_count();
  if (powers.size() != m_count) throw ArgumentError("power vector size must match UE count");
  if (trials < 1) throw ArgumentError("trials must be >= 1");
  if (params.n_antennas > 128) throw ArgumentError("ergodic_rate_mc is limited to N <= 128");
  for (double p : powers)
    if (!(p >= 0.0)) throw ArgumentError("powers must be non-negative");

  const int n = params.n_antennas;
  const int m = static_cast<int>(m_count);
  const double sqrt_n = std::sqrt(static_cast<double>(n));

  // sqrt(N) * Theta^{1/2} per UE
  std::vector<Eigen::MatrixXcd> shaping;
  if (params.matrix_valued()) {
    for (const auto& theta : params.correlations) shaping.push_back(sqrt_n * hermitian_sqrt(theta));
  }

  std::mt19937_64 rng(seed);
  std::vector<double> acc(m_count, 0.0);
  Eigen::MatrixXcd h(n, m), h_est(n, m);

  for (int t = 0; t < trials; ++t) {
    const Eigen::MatrixXcd h_tilde = draw_normalized(n, m, rng);
    const Eigen::MatrixXcd z = draw_normalized(n, m, rng);
    for (int k = 0; k < m; ++k) {
      const double tau = params.csi_accuracy[k];
      if (params.matrix_valued()) {
        h.col(k) = shaping[k] * h_tilde.col(k);
        h_est.col(k) = std::sqrt(1.0 - tau * tau) * h.col(k) + tau * (shaping[k] * z.col(k));
      } else {
        const double scale = sqrt_n * std::sqrt(params.gains[k]);
        h.col(k) = scale * h_tilde.col(k);
        h_est.col(k) = std::sqrt(1.0 - tau * tau) * h.col(k) + tau * scale * z.col(k);
      }
    }
    // V = H_est (H_est^H H_est + N alpha I_M)^-1, the N x M form of the RZF precoder.
    Eigen::MatrixXcd gram = h_est.adjoint() * h_est;
    gram.diagonal().array() += n * params.regularization;
    const Eigen::LDLT<Eigen::MatrixXcd> factor(gram);
    if (factor.info() != Eigen::Success) throw NumericalError("RZF Gram matrix is singular");
    const Eigen::MatrixXcd precoder = factor.solve(h_est.adjoint()).adjoint();
    // cross(i, k) = h_i^H v_k
    const Eigen::MatrixXcd cross = h.adjoint() * precoder;

    for (int i = 0; i < m; ++i) {
      double interference = 0.0;
      for (int k = 0; k < m; ++k)
        if (k != i) interference += powers[k] * std::norm(cross(i, k));
      const double sinr = powers[i] * std::norm(cross(i, i)) / (1.0 + interference);
      acc[i] += std::log2(1.0 + sinr);
    }
  }
  for (double& a : acc) a /= trials;
  return acc;
}

}  // namespace urllc
