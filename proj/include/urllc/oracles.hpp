// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The urllc-sched Authors

#pragma once

// Brute-force and closed-form references used by the validation suite and the
// tests. Nothing here calls the solvers it is meant to check.

#include <Eigen/Dense>
#include <random>
#include <span>
#include <vector>

#include "urllc/channel.hpp"
#include "urllc/latency_control.hpp"
#include "urllc/power_alloc.hpp"

namespace urllc::oracles {

// Positive root of N w^2 + (N alpha + M - N) w - N alpha = 0: the fixed point
// for Theta_m = I for all m.
double omega_identity_root(int n_antennas, int ue_count, double alpha);

// max_m |Omega_m - (1/N) Tr(Theta_m (...)^-1)| evaluated with an explicit
// LU inverse (scalar gains are expanded to g I).
double omega_residual_explicit(const ChannelParams& params, std::span<const double> omegas);

// Random Hermitian PSD matrix with trace n * gain.
Eigen::MatrixXcd random_psd(int n, double gain, std::mt19937_64& rng);

struct PowerGrid {
  double objective = 0.0;
  std::vector<double> powers;
};

// Exhaustive search over the budget simplex sum w_m p_m = P with `points`
// steps per dimension; the last UE takes the remaining budget.
PowerGrid waterfill_grid(const PowerProblem& prob, int points = 1000);

// Largest relative stationarity / complementary-slackness violation of a
// water-filling answer for multiplier mu.
double waterfill_kkt_residual(const PowerProblem& prob, std::span<const double> powers, double mu);

struct AuxGrid {
  double objective = 0.0;
  double aux = 0.0;
  double control = 0.0;
};

// points x points grid of Y*phi - w*nu*log(phi) over [floor, ceiling] x [nu_lo, nu_hi].
AuxGrid aux_grid(const AuxSubproblem& sub, double nu_hi, int points = 1000);

}  // namespace urllc::oracles
