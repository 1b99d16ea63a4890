// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The urllc-sched Authors

#include "urllc/latency_control.hpp"

#include <algorithm>
#include <cmath>

#include "urllc/errors.hpp"

namespace urllc {
namespace {

RateFloor latency_floor(std::int64_t t, const UeProfile& p, double history) {
  if (t < 1) throw ArgumentError("slot index must be >= 1");
  const double target = static_cast<double>(t) * p.mean_arrival -
                        p.mean_arrival * p.delay_bound * p.reliability_eps - history;
  const double value = std::max(p.rate_min, target);
  if (value > p.rate_max) return {p.rate_max, true};
  return {value, false};
}

constexpr double kInvPhi = 0.6180339887498949;  // (sqrt(5) - 1) / 2

// Minimizes a convex function on [lo, hi]; endpoints are compared explicitly so
// a boundary optimum is returned exactly.
template <class F>
double golden_section(F&& f, double lo, double hi) {
  if (!(hi > lo)) return lo;
  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200 && (b - a) > 1e-13 * (std::abs(a) + std::abs(b)); ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
  }
  double best = 0.5 * (a + b);
  double f_best = f(best);
  for (double cand : {lo, hi}) {
    const double fc = f(cand);
    if (fc < f_best) {
      best = cand;
      f_best = fc;
    }
  }
  return best;
}

struct CcpRun {
  double nu = 0.0;
  std::vector<double> trace;
  int iterations = 0;
  bool converged = false;
};

class AuxSolver {
 public:
  AuxSolver(const AuxSubproblem& sub, const CcpOptions& opts)
      : sub_(sub), opts_(opts), nu_lo_(sub.nu_lower()), nu_hi_(nu_upper(sub, opts.nu_max_factor)) {}

  double nu_lo() const { return nu_lo_; }
  double nu_hi() const { return nu_hi_; }

  // argmin over phi for fixed nu: the stationary point nu*w/Y projected on the box.
  double best_aux(double nu) const {
    if (sub_.weight == 0.0) return sub_.aux_floor;
    if (sub_.virtual_queue <= 0.0) return sub_.aux_ceiling;
    return std::clamp(sub_.weight * nu / sub_.virtual_queue, sub_.aux_floor, sub_.aux_ceiling);
  }

  double objective(double nu) const { return aux_objective(sub_, best_aux(nu), nu); }

  // h0(phi, nu) - g0_hat(nu; anchor) + Y*phi, minimized over phi.
  double surrogate(double nu, double anchor) const {
    const double w = sub_.weight;
    const double phi = best_aux(nu);
    const double h0 = w * nu * std::log(nu / phi);
    const double g0_hat = w * (anchor * std::log(anchor) + (1.0 + std::log(anchor)) * (nu - anchor));
    return h0 - g0_hat + sub_.virtual_queue * phi;
  }

  CcpRun run(double nu0) const {
    CcpRun r;
    r.nu = nu0;
    r.trace.push_back(objective(nu0));
    for (int i = 0; i < opts_.max_iter; ++i) {
      const double anchor = r.nu;
      double next = golden_section([&](double nu) { return surrogate(nu, anchor); }, nu_lo_, nu_hi_);
      // The surrogate majorizes the objective and touches it at the anchor,
      // so staying put is always admissible.
      if (surrogate(next, anchor) > surrogate(anchor, anchor)) next = anchor;
      const double prev = r.trace.back();
      double obj = objective(next);
      // Rounding can break the majorization by an ulp; reject such a step.
      if (obj > prev) {
        next = anchor;
        obj = prev;
      }
      r.iterations = i + 1;
      r.nu = next;
      r.trace.push_back(obj);
      if (std::abs(prev - obj) <= opts_.tol) {
        r.converged = true;
        break;
      }
    }
    return r;
  }

 private:
  const AuxSubproblem& sub_;
  const CcpOptions& opts_;
  double nu_lo_;
  double nu_hi_;
};

}  // namespace

RateFloor min_rate_floor(std::int64_t t, const UeProfile& profile, double served_cum) {
  return latency_floor(t, profile, served_cum);
}

RateFloor aux_floor(std::int64_t t, const UeProfile& profile, double aux_cum) {
  return latency_floor(t, profile, aux_cum);
}

double control_floor(double virtual_queue, double arrival_cap) {
  return std::max(virtual_queue - arrival_cap, 1.0);
}

double log_utility_slope_bound(const UeProfile& profile) {
  if (!(profile.rate_min > 0.0)) throw ArgumentError("rate_min must be positive");
  return 1.0 / profile.rate_min;
}

void AuxSubproblem::validate() const {
  if (!(virtual_queue >= 0.0)) throw ArgumentError("virtual queue must be non-negative");
  if (!(aux_floor > 0.0)) throw ArgumentError("aux floor must be positive");
  if (aux_floor > aux_ceiling) throw ArgumentError("aux floor exceeds aux ceiling");
  if (!(control_floor >= 1.0)) throw ArgumentError("control floor must be >= 1");
  if (!(pi > 0.0)) throw ArgumentError("pi must be positive");
  if (!(weight >= 0.0)) throw ArgumentError("weight must be non-negative");
  if (nu_max > 0.0 && nu_max < nu_lower())
    throw ArgumentError("nu_max lies below the control-parameter floor");
}

double aux_objective(const AuxSubproblem& sub, double aux, double control) {
  return sub.virtual_queue * aux - sub.weight * control * std::log(aux);
}

double nu_upper(const AuxSubproblem& sub, double nu_max_factor) {
  if (sub.nu_max > 0.0) return sub.nu_max;
  const double base = std::max({sub.nu_lower(), sub.virtual_queue * sub.aux_ceiling, 1.0});
  return std::max(nu_max_factor * base, sub.nu_lower());
}

CcpResult solve_aux_ccp(const AuxSubproblem& sub, const CcpOptions& opts) {
  sub.validate();
  if (!(opts.tol >= 0.0) || opts.max_iter < 1) throw ArgumentError("invalid CCP options");

  const AuxSolver solver(sub, opts);
  const double nu_init = std::max(solver.nu_lo(), std::min(1.0, solver.nu_hi()));

  CcpRun best = solver.run(nu_init);
  if (opts.two_sided_start && best.nu < solver.nu_hi()) {
    CcpRun alt = solver.run(solver.nu_hi());
    if (alt.trace.back() < best.trace.back()) best = std::move(alt);
  }

  CcpResult out;
  out.control = best.nu;
  out.aux = solver.best_aux(best.nu);
  out.objective_trace = std::move(best.trace);
  out.iterations = best.iterations;
  out.converged = best.converged;
  out.at_nu_max = best.nu >= solver.nu_hi();
  return out;
}

double static_control_aux(double virtual_queue, double static_v, double aux_floor,
                          double aux_ceiling) {
  if (virtual_queue <= 0.0) return aux_ceiling;
  return std::clamp(static_v / virtual_queue, aux_floor, aux_ceiling);
}

}  // namespace urllc
