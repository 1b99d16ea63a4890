// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The urllc-sched Authors

#include "urllc/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "urllc/errors.hpp"

namespace urllc::oracles {

double omega_identity_root(int n_antennas, int ue_count, double alpha) {
  const double n = n_antennas, m = ue_count;
  const double b = n * alpha + m - n;
  const double disc = std::sqrt(b * b + 4.0 * n * n * alpha);
  // Pick the cancellation-free form of the positive root.
  return b > 0.0 ? 2.0 * n * alpha / (b + disc) : (disc - b) / (2.0 * n);
}

double omega_residual_explicit(const ChannelParams& params, std::span<const double> omegas) {
  const int n = params.n_antennas;
  const std::size_t m = omegas.size();
  std::vector<Eigen::MatrixXcd> thetas;
  for (std::size_t k = 0; k < m; ++k) {
    if (params.matrix_valued())
      thetas.push_back(params.correlations[k]);
    else
      thetas.push_back(params.gains[k] * Eigen::MatrixXcd::Identity(n, n));
  }
  Eigen::MatrixXcd kernel = Eigen::MatrixXcd::Identity(n, n);
  for (std::size_t k = 0; k < m; ++k)
    kernel += thetas[k] / (static_cast<double>(n) * (params.regularization + omegas[k]));
  const Eigen::MatrixXcd inv = kernel.partialPivLu().inverse();
  double worst = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double mapped = (thetas[k] * inv).trace().real() / n;
    worst = std::max(worst, std::abs(mapped - omegas[k]));
  }
  return worst;
}

Eigen::MatrixXcd random_psd(int n, double gain, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd a(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) a(r, c) = {normal(rng), normal(rng)};
  Eigen::MatrixXcd theta = a * a.adjoint();
  theta = 0.5 * (theta + theta.adjoint()).eval();
  theta *= n * gain / theta.trace().real();
  return theta;
}

PowerGrid waterfill_grid(const PowerProblem& prob, int points) {
  const std::size_t m = prob.priorities.size();
  PowerGrid best;
  best.objective = -std::numeric_limits<double>::infinity();
  if (m == 0) return best;

  // value[u][k]: UE u's contribution when it receives k/points of the budget.
  std::vector<std::vector<double>> value(m, std::vector<double>(points + 1));
  for (std::size_t u = 0; u < m; ++u)
    for (int k = 0; k <= points; ++k) {
      const double p = prob.budget * k / points / prob.budget_weights[u];
      value[u][k] = prob.priorities[u] * std::log2(1.0 + prob.gains[u] * p);
    }

  std::vector<int> share(m, 0), best_share(m, 0);
  // Depth-first over the first m-1 shares; the last takes what is left.
  const auto recurse = [&](auto&& self, std::size_t u, int left, double acc) -> void {
    if (u + 1 == m) {
      const double total = acc + value[u][left];
      if (total > best.objective) {
        best.objective = total;
        share[u] = left;
        best_share = share;
      }
      return;
    }
    for (int k = 0; k <= left; ++k) {
      share[u] = k;
      self(self, u + 1, left - k, acc + value[u][k]);
    }
  };
  recurse(recurse, 0, points, 0.0);

  best.powers.resize(m);
  for (std::size_t u = 0; u < m; ++u)
    best.powers[u] = prob.budget * best_share[u] / points / prob.budget_weights[u];
  return best;
}

double waterfill_kkt_residual(const PowerProblem& prob, std::span<const double> powers, double mu) {
  double worst = 0.0;
  for (std::size_t u = 0; u < powers.size(); ++u) {
    const double y = prob.priorities[u], c = prob.gains[u], w = prob.budget_weights[u];
    const double price = mu * w;
    const double marginal = y * c / (std::log(2.0) * (1.0 + c * powers[u]));
    if (powers[u] > 0.0) {
      worst = std::max(worst, std::abs(marginal - price) / price);
    } else if (price > 0.0) {
      worst = std::max(worst, std::max(0.0, marginal - price) / price);
    } else if (marginal > 0.0) {
      worst = std::max(worst, 1.0);  // positive marginal value left unallocated
    }
  }
  return worst;
}

AuxGrid aux_grid(const AuxSubproblem& sub, double nu_hi, int points) {
  AuxGrid best;
  best.objective = std::numeric_limits<double>::infinity();
  const double nu_lo = sub.control_floor / sub.pi;
  for (int i = 0; i < points; ++i) {
    const double phi = points == 1 ? sub.aux_floor
                                   : sub.aux_floor + (sub.aux_ceiling - sub.aux_floor) * i / (points - 1);
    const double log_phi = std::log(phi);
    for (int j = 0; j < points; ++j) {
      const double nu = points == 1 ? nu_lo : nu_lo + (nu_hi - nu_lo) * j / (points - 1);
      const double obj = sub.virtual_queue * phi - sub.weight * nu * log_phi;
      if (obj < best.objective) best = {obj, phi, nu};
    }
  }
  return best;
}

}  // namespace urllc::oracles
