// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The urllc-sched Authors

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

namespace urllc {

// Log-distance path loss: PL(d) [dB] = intercept_db + 10 * exponent * log10(d / 1 m).
// Defaults are a common 28 GHz urban LOS fit.
struct PathLossConfig {
  double intercept_db = 61.4;
  double exponent = 2.0;
};

// Receiver noise over the system bandwidth.
struct NoiseConfig {
  double psd_dbm_per_hz = -174.0;
  double noise_figure_db = 9.0;
};

double dbm_to_watts(double dbm);
double noise_power_watts(const NoiseConfig& noise, double bandwidth_hz);

// Linear power gain 10^(-PL(d)/10). Throws ArgumentError for d <= 0.
double pathloss_gain(double distance_m, const PathLossConfig& model);

// Downlink massive-MIMO parameters. Spatial correlation is either scalar,
// Theta_m = gains[m] * I, or (validation only) a full Hermitian PSD matrix per UE.
struct ChannelParams {
  int n_antennas = 1;
  double regularization = 0.01;
  std::vector<double> gains;
  std::vector<Eigen::MatrixXcd> correlations;  // empty => scalar model
  std::vector<double> csi_accuracy;
  double power_budget = 1.0;

  std::size_t ue_count() const;
  bool matrix_valued() const { return !correlations.empty(); }

  // Throws ArgumentError describing the first violated invariant.
  void validate() const;
};

struct OmegaSolution {
  std::vector<double> omegas;
  double residual = 0.0;
  int iterations = 0;
};

// Fixed point Omega_m = (1/N) Tr(Theta_m ((1/N) sum_k Theta_k / (alpha + Omega_k) + I)^-1),
// iterated from Omega = 1 with 0.5 damping once the residual grows.
// Throws IterationLimitError carrying the last iterate when max_iter is hit.
OmegaSolution solve_omega(const ChannelParams& params, double tol, int max_iter);

// Fixed-point map evaluated once at `omegas` (scalar or matrix model).
std::vector<double> omega_map(const ChannelParams& params, std::span<const double> omegas);

// (1/N) sum_m p_m / Omega_m; compare against the power budget.
double power_budget_used(std::span<const double> powers, const OmegaSolution& omega, int n_antennas);

// Large-N spectral efficiency log2(1 + p (1 - tau^2)) in bits/s/Hz.
double deterministic_rate(double power, double tau);

// Monte Carlo estimate of the per-UE ergodic rate under RZF precoding with
// imperfect CSI. Dense linear algebra; meant for small N (<= 128).
std::vector<double> ergodic_rate_mc(const ChannelParams& params, std::span<const double> powers,
                                    int trials, std::uint64_t seed);

}  // namespace urllc
