// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The urllc-sched Authors

#include "urllc/channel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "urllc/errors.hpp"
#include "urllc/simd/kernels.hpp"

namespace urllc {

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double noise_power_watts(const NoiseConfig& noise, double bandwidth_hz) {
  if (bandwidth_hz <= 0.0) throw ArgumentError("bandwidth must be positive");
  return dbm_to_watts(noise.psd_dbm_per_hz + 10.0 * std::log10(bandwidth_hz) +
                      noise.noise_figure_db);
}

double pathloss_gain(double distance_m, const PathLossConfig& model) {
  if (!(distance_m > 0.0)) throw ArgumentError("path loss distance must be positive");
  const double pl_db = model.intercept_db + 10.0 * model.exponent * std::log10(distance_m);
  return std::pow(10.0, -pl_db / 10.0);
}

std::size_t ChannelParams::ue_count() const {
  return matrix_valued() ? correlations.size() : gains.size();
}

void ChannelParams::validate() const {
  const std::size_t m = ue_count();
  if (n_antennas < 1) throw ArgumentError("n_antennas must be >= 1");
  if (static_cast<std::size_t>(n_antennas) < m)
    throw ArgumentError("n_antennas (" + std::to_string(n_antennas) + ") must be >= UE count (" +
                        std::to_string(m) + ")");
  if (!(regularization > 0.0)) throw ArgumentError("regularization must be positive");
  if (!(power_budget > 0.0)) throw ArgumentError("power budget must be positive");
  if (csi_accuracy.size() != m) throw ArgumentError("csi_accuracy size must match UE count");
  for (double tau : csi_accuracy)
    if (!(tau >= 0.0 && tau <= 1.0)) throw ArgumentError("csi_accuracy must lie in [0, 1]");
  if (matrix_valued()) {
    for (const auto& theta : correlations) {
      if (theta.rows() != n_antennas || theta.cols() != n_antennas)
        throw ArgumentError("correlation matrix must be N x N");
      if (!theta.isApprox(theta.adjoint(), 1e-10))
        throw ArgumentError("correlation matrix must be Hermitian");
    }
  } else {
    for (double g : gains)
      if (!(g > 0.0)) throw ArgumentError("correlation gains must be positive");
  }
}

namespace {

std::vector<double> omega_map_scalar(const ChannelParams& params, std::span<const double> omegas) {
  const double n = params.n_antennas;
  const double load = simd::ratio_sum(params.gains, omegas, params.regularization) / n;
  std::vector<double> out(omegas.size());
  for (std::size_t m = 0; m < out.size(); ++m) out[m] = params.gains[m] / (load + 1.0);
  return out;
}

std::vector<double> omega_map_matrix(const ChannelParams& params, std::span<const double> omegas) {
  const int n = params.n_antennas;
  Eigen::MatrixXcd kernel = Eigen::MatrixXcd::Identity(n, n);
  for (std::size_t k = 0; k < omegas.size(); ++k)
    kernel += params.correlations[k] / (static_cast<double>(n) * (params.regularization + omegas[k]));
  const Eigen::LDLT<Eigen::MatrixXcd> factor(kernel);
  if (factor.info() != Eigen::Success) throw NumericalError("omega map: factorization failed");
  std::vector<double> out(omegas.size());
  for (std::size_t m = 0; m < out.size(); ++m)
    out[m] = factor.solve(params.correlations[m]).trace().real() / n;
  return out;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double r = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) r = std::max(r, std::abs(a[i] - b[i]));
  return r;
}

}  // namespace

std::vector<double> omega_map(const ChannelParams& params, std::span<const double> omegas) {
  return params.matrix_valued() ? omega_map_matrix(params, omegas)
                                : omega_map_scalar(params, omegas);
}

OmegaSolution solve_omega(const ChannelParams& params, double tol, int max_iter) {
  params.validate();
  if (!(tol > 0.0)) throw ArgumentError("omega tolerance must be positive");
  if (max_iter < 1) throw ArgumentError("omega max_iter must be positive");

  OmegaSolution sol;
  sol.omegas.assign(params.ue_count(), 1.0);
  if (sol.omegas.empty()) return sol;

  double damping = 1.0;
  double prev_residual = INFINITY;
  for (int it = 0; it < max_iter; ++it) {
    const auto mapped = omega_map(params, sol.omegas);
    const double residual = max_abs_diff(mapped, sol.omegas);
    sol.residual = residual;
    sol.iterations = it;
    if (residual <= tol) return sol;
    if (residual > prev_residual) damping = 0.5;
    prev_residual = residual;
    for (std::size_t m = 0; m < mapped.size(); ++m)
      sol.omegas[m] += damping * (mapped[m] - sol.omegas[m]);
  }
  const auto mapped = omega_map(params, sol.omegas);
  sol.residual = max_abs_diff(mapped, sol.omegas);
  sol.iterations = max_iter;
  if (sol.residual <= tol) return sol;
  throw IterationLimitError("omega fixed point did not converge in " + std::to_string(max_iter) +
                                " iterations (residual " + std::to_string(sol.residual) + ")",
                            sol.omegas, sol.residual, max_iter);
}

double power_budget_used(std::span<const double> powers, const OmegaSolution& omega,
                         int n_antennas) {
  if (powers.size() != omega.omegas.size())
    throw ArgumentError("power vector and omega size mismatch");
  return simd::ratio_sum(powers, omega.omegas, 0.0) / n_antennas;
}

double deterministic_rate(double power, double tau) {
  return std::log2(1.0 + power * (1.0 - tau * tau));
}

}  // namespace urllc
