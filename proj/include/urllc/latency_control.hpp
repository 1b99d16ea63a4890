// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The urllc-sched Authors

#pragma once

#include <cstdint>
#include <vector>

#include "urllc/traffic.hpp"

namespace urllc {

// A per-slot rate floor. `clamped` is set when the latency-derived value
// exceeded rate_max and was cut back (the UE cannot catch up this slot).
struct RateFloor {
  double value = 0.0;
  bool clamped = false;
};

// r0(t) = max{r_min, t*lambda - lambda*d_th*eps - served_cum}, clamped to rate_max.
RateFloor min_rate_floor(std::int64_t t, const UeProfile& profile, double served_cum);

// Same shape as min_rate_floor over the auxiliary-rate history.
RateFloor aux_floor(std::int64_t t, const UeProfile& profile, double aux_cum);

// nu0(t) = max{Y(t) - a_max, 1}
double control_floor(double virtual_queue, double arrival_cap);

// Largest derivative of log(x) on [rate_min, rate_max].
double log_utility_slope_bound(const UeProfile& profile);

// min_{phi, nu}  Y*phi - w*nu*log(phi)
// s.t.  pi*nu >= nu0,  phi in [aux_floor, aux_ceiling],  nu <= nu_max (search domain only).
struct AuxSubproblem {
  double virtual_queue = 0.0;
  double aux_floor = 1.0;
  double aux_ceiling = 1.0;
  double control_floor = 1.0;
  double pi = 1.0;
  double weight = 1.0;
  double nu_max = 0.0;  // <= 0 selects nu_max_factor * max(nu0/pi, Y*aux_ceiling, 1)

  void validate() const;
  double nu_lower() const { return control_floor / pi; }
};

struct CcpOptions {
  double tol = 1e-6;
  int max_iter = 100;
  double nu_max_factor = 2.0;
  // Also start from the top of the nu domain and keep the better local optimum.
  bool two_sided_start = true;
};

struct CcpResult {
  double aux = 0.0;
  double control = 0.0;
  std::vector<double> objective_trace;  // true DC objective at each iterate
  int iterations = 0;
  bool converged = false;
  bool at_nu_max = false;
};

// Original (non-convexified) objective Y*phi - w*nu*log(phi).
double aux_objective(const AuxSubproblem& sub, double aux, double control);

// Upper end of the nu search domain for `sub`.
double nu_upper(const AuxSubproblem& sub, double nu_max_factor);

// Convex-concave procedure: split -w*nu*log(phi) into the relative entropy
// w*nu*log(nu/phi) minus the negative entropy w*nu*log(nu), linearize the
// latter at the current nu, and solve the convex remainder (closed form in
// phi, golden-section in nu). Throws ArgumentError on invalid bounds; returns
// converged = false when max_iter runs out.
CcpResult solve_aux_ccp(const AuxSubproblem& sub, const CcpOptions& opts = {});

// Static-control aux choice used by the fixed-V baselines:
// phi = clamp(V / Y, floor, ceiling) for Y > 0, else ceiling.
double static_control_aux(double virtual_queue, double static_v, double aux_floor,
                          double aux_ceiling);

}  // namespace urllc
