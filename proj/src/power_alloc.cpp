// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The urllc-sched Authors

#include "urllc/power_alloc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "urllc/channel.hpp"
#include "urllc/errors.hpp"
#include "urllc/simd/kernels.hpp"

namespace urllc {

void PowerProblem::validate() const {
  const std::size_t m = priorities.size();
  if (gains.size() != m || budget_weights.size() != m)
    throw ArgumentError("power problem vectors must have equal length");
  if (!(budget > 0.0)) throw ArgumentError("power budget must be positive");
  for (std::size_t i = 0; i < m; ++i) {
    if (!(priorities[i] >= 0.0)) throw ArgumentError("priorities must be non-negative");
    if (!(gains[i] >= 0.0 && gains[i] <= 1.0)) throw ArgumentError("gains must lie in [0, 1]");
    if (!(budget_weights[i] > 0.0)) throw ArgumentError("budget weights must be positive");
  }
}

WaterfillResult waterfill(const PowerProblem& prob, const WaterfillOptions& opts) {
  prob.validate();
  if (!(opts.tol > 0.0) || opts.max_iter < 1) throw ArgumentError("invalid water-filling options");

  const std::size_t m = prob.priorities.size();
  WaterfillResult res;
  res.powers.assign(m, 0.0);

  // p_m = level * (Y_m / w_m) - 1/c_m with level = 1 / (mu ln2)
  std::vector<double> scaled_prio(m, 0.0), inv_gain(m, 1.0);
  double mu_hi = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double y = prob.priorities[i], c = prob.gains[i], w = prob.budget_weights[i];
    if (y <= 0.0 || c < kMinActiveGain) continue;
    scaled_prio[i] = y / w;
    inv_gain[i] = 1.0 / c;
    mu_hi = std::max(mu_hi, y * c / (std::numbers::ln2 * w));
  }
  if (mu_hi == 0.0) return res;
  mu_hi += 1.0;

  const auto usage = [&](double mu) {
    return simd::waterfill_usage(scaled_prio, inv_gain, prob.budget_weights,
                                 1.0 / (mu * std::numbers::ln2), res.powers);
  };

  double lo = 1e-12, hi = mu_hi;
  if (usage(lo) < prob.budget)
    throw NumericalError("water-filling bracket does not reach the budget");

  // Invariant: usage(lo) >= P > usage(hi) until hi meets the budget from below.
  double mu = hi;
  for (int it = 0; it < opts.max_iter; ++it) {
    res.iterations = it + 1;
    const double mid = std::sqrt(lo * hi);
    const double u = usage(mid);
    if (u > prob.budget) {
      lo = mid;
    } else {
      hi = mid;
      mu = mid;
      if (prob.budget - u <= opts.tol * prob.budget) break;
    }
  }
  res.multiplier = mu;
  res.budget_used = usage(mu);
  return res;
}

std::vector<double> rates_from_powers(std::span<const double> powers, std::span<const double> taus) {
  if (powers.size() != taus.size()) throw ArgumentError("powers and taus size mismatch");
  std::vector<double> out(powers.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = deterministic_rate(powers[i], taus[i]);
  return out;
}

double weighted_rate_objective(const PowerProblem& prob, std::span<const double> powers) {
  double total = 0.0;
  for (std::size_t i = 0; i < powers.size(); ++i)
    total += prob.priorities[i] * std::log2(1.0 + prob.gains[i] * powers[i]);
  return total;
}

}  // namespace urllc
