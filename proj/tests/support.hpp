// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The urllc-sched Authors

#pragma once

#include <vector>

#include "urllc/channel.hpp"
#include "urllc/policies.hpp"
#include "urllc/scenario.hpp"
#include "urllc/traffic.hpp"

namespace urllc::test {

// Scalar-correlation cell with Omega solved.
inline CellContext make_cell(std::vector<double> gains, std::vector<double> taus, int n_antennas = 32,
                             double budget = 10.0, double bits_per_se = 1.0, double alpha = 0.01) {
  CellContext cell;
  cell.channel.n_antennas = n_antennas;
  cell.channel.regularization = alpha;
  cell.channel.gains = std::move(gains);
  cell.channel.csi_accuracy = std::move(taus);
  cell.channel.power_budget = budget;
  cell.omega = solve_omega(cell.channel, 1e-12, 10000);
  cell.bits_per_se = bits_per_se;
  return cell;
}

// Profile in the default shape: r_min = 0.8 lambda, r_max = 1.2 lambda, a_max = 4 lambda.
inline UeProfile make_profile(double lambda, double delay_bound = 100.0, double eps = 0.05) {
  UeProfile p;
  p.mean_arrival = lambda;
  p.arrival_cap = 4.0 * lambda;
  p.delay_bound = delay_bound;
  p.reliability_eps = eps;
  p.rate_min = 0.8 * lambda;
  p.rate_max = 1.2 * lambda;
  return p;
}

// Small, fast scenario for harness-level tests.
inline ScenarioConfig small_config(int ue_count = 4, int slots = 200, int realizations = 3) {
  ScenarioConfig cfg;
  cfg.ue_count = ue_count;
  cfg.horizon_slots = slots;
  cfg.realizations = realizations;
  cfg.ccdf_max_ms = 20.0;
  cfg.ccdf_step_ms = 0.5;
  return cfg;
}

}  // namespace urllc::test
