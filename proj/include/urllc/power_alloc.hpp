// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The urllc-sched Authors

#pragma once

#include <span>
#include <vector>

namespace urllc {

// max_p  sum_m Y_m log2(1 + c_m p_m)   s.t.  sum_m w_m p_m <= P,  p >= 0
struct PowerProblem {
  std::vector<double> priorities;      // Y_m (or utility weights for WSRM)
  std::vector<double> gains;           // c_m = 1 - tau_m^2
  std::vector<double> budget_weights;  // w_m = 1 / (N * Omega_m)
  double budget = 1.0;

  void validate() const;
};

struct WaterfillOptions {
  double tol = 1e-9;    // relative budget error
  int max_iter = 200;
};

struct WaterfillResult {
  std::vector<double> powers;
  double multiplier = 0.0;  // budget price mu; 0 when nothing is allocated
  double budget_used = 0.0;
  int iterations = 0;
};

// UEs below this gain are never allocated power.
inline constexpr double kMinActiveGain = 1e-12;

// KKT solution p_m(mu) = max(0, Y_m / (mu w_m ln2) - 1/c_m) with mu found by
// bisection (in log scale) until the budget is met from below within tol.
// All-zero priorities give all-zero powers. Throws NumericalError if the
// bracket does not straddle the budget.
WaterfillResult waterfill(const PowerProblem& prob, const WaterfillOptions& opts = {});

// Elementwise log2(1 + p (1 - tau^2)).
std::vector<double> rates_from_powers(std::span<const double> powers, std::span<const double> taus);

// sum_m Y_m log2(1 + c_m p_m)
double weighted_rate_objective(const PowerProblem& prob, std::span<const double> powers);

}  // namespace urllc
