// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The urllc-sched Authors

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace urllc::validation {

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;   // worst gap observed
  double tolerance = 0.0;  // pass iff measured < tolerance (plus any structural checks)
  std::string detail;
};

struct Options {
  std::optional<double> tolerance;  // replaces every tolerance of a check
  std::uint64_t seed = 20260101;
};

// Fixed point vs the closed-form identity-correlation root, and explicit-inverse
// residual for random PSD correlations.
CheckResult check_omega(const Options& opts = {});

// Water-filling vs budget-simplex grid search on 100 random instances (M <= 4),
// KKT residuals, symmetric and zero-priority cases.
CheckResult check_waterfill(const Options& opts = {});

// CCP vs 1000 x 1000 grid on 50 random subproblems; descent, feasibility and
// convergence-rate requirements.
CheckResult check_ccp(const Options& opts = {});

// Deterministic-equivalent rate vs Monte Carlo ergodic rate at N = 16, 32, 64
// (M = N/2, tau = 0, alpha = 0.01, equal power, 2000 trials): the gap must
// strictly decrease. `measured` is the largest step-to-step change of the gap.
CheckResult check_mc(const Options& opts = {});

// 1e6 randomized queue / virtual-queue steps: exact recursion, conservation,
// and agreement of every compiled kernel variant with the scalar reference.
CheckResult check_queue(const Options& opts = {});

const std::vector<std::string>& check_names();

// Runs the named checks (all when `only` is empty). Unknown names throw ArgumentError.
std::vector<CheckResult> run_checks(const std::vector<std::string>& only, const Options& opts = {});

}  // namespace urllc::validation
