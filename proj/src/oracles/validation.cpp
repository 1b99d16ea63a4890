// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The urllc-sched Authors

#include "urllc/validation.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "urllc/channel.hpp"
#include "urllc/errors.hpp"
#include "urllc/latency_control.hpp"
#include "urllc/oracles.hpp"
#include "urllc/power_alloc.hpp"
#include "urllc/simd/kernels.hpp"
#include "urllc/traffic.hpp"

namespace urllc::validation {
namespace {

double pick(const Options& opts, double fallback) { return opts.tolerance.value_or(fallback); }

}  // namespace

CheckResult check_omega(const Options& opts) {
  CheckResult res{"omega", false, 0.0, pick(opts, 1e-8), ""};
  double worst_identity = 0.0;
  for (int n : {8, 32})
    for (int m : {4, 16})
      for (double alpha : {0.01, 0.1}) {
        if (m > n) continue;
        ChannelParams p;
        p.n_antennas = n;
        p.regularization = alpha;
        p.gains.assign(m, 1.0);
        p.csi_accuracy.assign(m, 0.0);
        const auto sol = solve_omega(p, 1e-13, 100000);
        const double root = oracles::omega_identity_root(n, m, alpha);
        for (double w : sol.omegas) worst_identity = std::max(worst_identity, std::abs(w - root));
      }

  std::mt19937_64 rng(opts.seed);
  double worst_psd = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    ChannelParams p;
    p.n_antennas = 8;
    p.regularization = 0.01;
    for (int m = 0; m < 4; ++m) p.correlations.push_back(oracles::random_psd(8, 1.0, rng));
    p.csi_accuracy.assign(4, 0.0);
    const auto sol = solve_omega(p, 1e-13, 100000);
    worst_psd = std::max(worst_psd, oracles::omega_residual_explicit(p, sol.omegas));
  }
  res.measured = std::max(worst_identity, worst_psd);
  res.passed = res.measured < res.tolerance;
  res.detail = fmt::format("identity max |omega - root| = {:.3e}; random PSD residual = {:.3e}",
                           worst_identity, worst_psd);
  return res;
}

CheckResult check_waterfill(const Options& opts) {
  const double obj_tol = pick(opts, 1e-3);
  const double kkt_tol = pick(opts, 1e-6);
  CheckResult res{"waterfill", false, 0.0, obj_tol, ""};
  std::mt19937_64 rng(opts.seed + 1);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::uniform_int_distribution<int> ue_count(1, 4);

  double worst_gap = 0.0, worst_kkt = 0.0;
  for (int inst = 0; inst < 100; ++inst) {
    PowerProblem prob;
    const int m = ue_count(rng);
    for (int i = 0; i < m; ++i) {
      prob.priorities.push_back(u01(rng) < 0.1 ? 0.0 : 10.0 * u01(rng));
      prob.gains.push_back(0.1 + 0.9 * u01(rng));
      prob.budget_weights.push_back(0.2 + 1.8 * u01(rng));
    }
    prob.budget = 0.5 + 9.5 * u01(rng);
    const auto wf = waterfill(prob, {1e-12, 400});
    const auto grid = oracles::waterfill_grid(prob, 1000);
    double obj = 0.0;
    for (int i = 0; i < m; ++i)
      obj += prob.priorities[i] * std::log2(1.0 + prob.gains[i] * wf.powers[i]);
    const double gap = std::abs(obj - grid.objective) / std::max(1e-12, std::abs(grid.objective));
    if (grid.objective != 0.0 || obj != 0.0) worst_gap = std::max(worst_gap, gap);
    if (wf.multiplier > 0.0)
      worst_kkt = std::max(worst_kkt, oracles::waterfill_kkt_residual(prob, wf.powers, wf.multiplier));
  }

  // Exact cases: identical UEs split evenly, zero priorities allocate nothing.
  PowerProblem sym{{1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}, 4.0};
  const auto ps = waterfill(sym).powers;
  PowerProblem zero{{0.0, 0.0, 0.0}, {1.0, 0.5, 0.2}, {1.0, 1.0, 1.0}, 3.0};
  const auto pz = waterfill(zero).powers;
  const bool exact_ok = ps[0] == ps[1] && std::abs(ps[0] - 2.0) < 1e-8 &&
                        std::all_of(pz.begin(), pz.end(), [](double p) { return p == 0.0; });

  res.measured = worst_gap;
  res.passed = worst_gap < obj_tol && worst_kkt < kkt_tol && exact_ok;
  res.detail = fmt::format("max relative objective gap vs grid = {:.3e}; max KKT residual = {:.3e} "
                           "(tol {:.1e}); exact cases {}",
                           worst_gap, worst_kkt, kkt_tol, exact_ok ? "ok" : "FAILED");
  return res;
}

CheckResult check_ccp(const Options& opts) {
  CheckResult res{"ccp", false, 0.0, pick(opts, 1e-3), ""};
  std::mt19937_64 rng(opts.seed + 2);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  constexpr int kInstances = 50;
  int converged = 0, monotone_failures = 0, infeasible = 0;
  double worst = -INFINITY;
  const CcpOptions copts;
  for (int inst = 0; inst < kInstances; ++inst) {
    AuxSubproblem sub;
    sub.virtual_queue = u01(rng) < 0.1 ? 0.0 : 100.0 * u01(rng);
    sub.aux_floor = 0.05 + 4.95 * u01(rng);
    sub.aux_ceiling = sub.aux_floor * (1.0 + 2.0 * u01(rng));
    sub.control_floor = 1.0 + 9.0 * u01(rng);
    sub.pi = 0.1 + 1.9 * u01(rng);
    const auto r = solve_aux_ccp(sub, copts);
    if (r.converged) ++converged;
    for (std::size_t i = 1; i < r.objective_trace.size(); ++i)
      if (r.objective_trace[i] > r.objective_trace[i - 1]) ++monotone_failures;
    const double nu_hi = nu_upper(sub, copts.nu_max_factor);
    if (r.aux < sub.aux_floor || r.aux > sub.aux_ceiling || sub.pi * r.control < sub.control_floor * (1 - 1e-12) ||
        r.control > nu_hi)
      ++infeasible;
    const auto grid = oracles::aux_grid(sub, nu_hi, 1000);
    const double final_obj = sub.virtual_queue * r.aux - r.control * std::log(r.aux);
    worst = std::max(worst, (final_obj - grid.objective) / (1.0 + std::abs(grid.objective)));
  }
  res.measured = worst;
  const double conv_rate = static_cast<double>(converged) / kInstances;
  res.passed = worst < res.tolerance && monotone_failures == 0 && infeasible == 0 && conv_rate >= 0.95;
  res.detail = fmt::format("max (ccp - grid)/(1+|grid|) = {:.3e}; non-monotone steps = {}; "
                           "infeasible = {}; converged {}/{}",
                           worst, monotone_failures, infeasible, converged, kInstances);
  return res;
}

CheckResult check_mc(const Options& opts) {
  CheckResult res{"mc", false, 0.0, pick(opts, 0.0), ""};
  constexpr double kPower = 10.0;
  std::vector<double> gaps;
  std::string per_n;
  for (int n : {16, 32, 64}) {
    ChannelParams p;
    p.n_antennas = n;
    p.regularization = 0.01;
    const int m = n / 2;
    p.gains.assign(m, 1.0);
    p.csi_accuracy.assign(m, 0.0);
    const std::vector<double> powers(m, kPower);
    const auto rates = ergodic_rate_mc(p, powers, 2000, opts.seed + static_cast<std::uint64_t>(n));
    double mean = 0.0;
    for (double r : rates) mean += r;
    mean /= m;
    gaps.push_back(std::abs(mean - std::log2(1.0 + kPower)));
    per_n += fmt::format("{}N={}: gap {:.6f}", per_n.empty() ? "" : ", ", n, gaps.back());
  }
  res.measured = -INFINITY;
  for (std::size_t i = 1; i < gaps.size(); ++i) res.measured = std::max(res.measured, gaps[i] - gaps[i - 1]);
  res.passed = res.measured < res.tolerance;
  res.detail = per_n + " (must strictly decrease)";
  return res;
}

CheckResult check_queue(const Options& opts) {
  CheckResult res{"queue", false, 0.0, pick(opts, 1e-6), ""};
  constexpr std::size_t kUes = 8;
  constexpr std::size_t kSlots = 125000;  // 1e6 UE-steps
  std::mt19937_64 rng(opts.seed + 3);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  QueueBank bank(kUes);
  std::vector<double> q_ref(kUes, 0.0), y_ref(kUes, 0.0), arrived(kUes, 0.0), drained(kUes, 0.0);
  std::vector<double> a(kUes), r(kUes), phi(kUes);
  double worst_recursion = 0.0;
  for (std::size_t t = 0; t < kSlots; ++t) {
    for (std::size_t m = 0; m < kUes; ++m) {
      a[m] = u01(rng) < 0.2 ? 0.0 : 1e5 * u01(rng);
      r[m] = u01(rng) < 0.1 ? 0.0 : 1.2e5 * u01(rng);
      phi[m] = 1e5 * u01(rng);
    }
    for (std::size_t m = 0; m < kUes; ++m) {
      drained[m] += std::min(q_ref[m], r[m]);
      arrived[m] += a[m];
      q_ref[m] = std::max(q_ref[m] - r[m], 0.0) + a[m];
      y_ref[m] = std::max(y_ref[m] + phi[m] - r[m], 0.0);
    }
    bank.advance(a, r, phi);
    for (std::size_t m = 0; m < kUes; ++m)
      worst_recursion = std::max({worst_recursion, std::abs(bank.queues()[m] - q_ref[m]),
                                  std::abs(bank.virtual_queues()[m] - y_ref[m])});
  }
  double worst_conservation = 0.0;
  for (std::size_t m = 0; m < kUes; ++m) {
    const double lhs = arrived[m] - drained[m];
    worst_conservation = std::max(worst_conservation,
                                  std::abs(lhs - bank.queues()[m]) / std::max(1.0, arrived[m]));
  }

  // Every compiled vector variant against the scalar table on ragged lengths.
  double worst_kernel = 0.0;
  const auto& ref = simd::scalar_kernels();
  for (const auto* table : {simd::avx2_kernels(), simd::neon_kernels()}) {
    if (!table) continue;
    for (std::size_t n = 0; n < 37; ++n) {
      std::vector<double> q1(n), q2, s(n), x(n), num(n), den(n), p1(n), p2(n), inv(n), cost(n);
      for (std::size_t i = 0; i < n; ++i) {
        q1[i] = 1e3 * u01(rng);
        s[i] = 1e3 * u01(rng);
        x[i] = 1e3 * u01(rng);
        num[i] = u01(rng);
        den[i] = 0.1 + u01(rng);
        inv[i] = 1.0 + u01(rng);
        cost[i] = 0.1 + u01(rng);
      }
      q2 = q1;
      ref.lindley_step(q1.data(), s.data(), x.data(), n);
      table->lindley_step(q2.data(), s.data(), x.data(), n);
      for (std::size_t i = 0; i < n; ++i) worst_kernel = std::max(worst_kernel, std::abs(q1[i] - q2[i]));
      const double s1 = ref.ratio_sum(num.data(), den.data(), 0.01, n);
      const double s2 = table->ratio_sum(num.data(), den.data(), 0.01, n);
      worst_kernel = std::max(worst_kernel, std::abs(s1 - s2) / std::max(1.0, std::abs(s1)) > 1e-13 ? 1.0 : 0.0);
      const double u1 = ref.waterfill_usage(num.data(), inv.data(), cost.data(), 3.0, p1.data(), n);
      const double u2 = table->waterfill_usage(num.data(), inv.data(), cost.data(), 3.0, p2.data(), n);
      worst_kernel = std::max(worst_kernel, std::abs(u1 - u2) / std::max(1.0, std::abs(u1)) > 1e-13 ? 1.0 : 0.0);
      for (std::size_t i = 0; i < n; ++i) worst_kernel = std::max(worst_kernel, std::abs(p1[i] - p2[i]));
    }
  }

  res.measured = std::max({worst_recursion, worst_conservation, worst_kernel});
  res.passed = res.measured < res.tolerance;
  res.detail = fmt::format("recursion max error {:.3e}; conservation max rel error {:.3e}; "
                           "kernel variants max deviation {:.3e} (active: {})",
                           worst_recursion, worst_conservation, worst_kernel,
                           simd::isa_name(simd::active().isa));
  return res;
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names{"omega", "waterfill", "ccp", "mc", "queue"};
  return names;
}

std::vector<CheckResult> run_checks(const std::vector<std::string>& only, const Options& opts) {
  for (const auto& name : only)
    if (std::find(check_names().begin(), check_names().end(), name) == check_names().end())
      throw ArgumentError("unknown validation check '" + name + "'");
  const auto wanted = [&](const std::string& name) {
    return only.empty() || std::find(only.begin(), only.end(), name) != only.end();
  };
  std::vector<CheckResult> out;
  if (wanted("omega")) out.push_back(check_omega(opts));
  if (wanted("waterfill")) out.push_back(check_waterfill(opts));
  if (wanted("ccp")) out.push_back(check_ccp(opts));
  if (wanted("mc")) out.push_back(check_mc(opts));
  if (wanted("queue")) out.push_back(check_queue(opts));
  return out;
}

}  // namespace urllc::validation
