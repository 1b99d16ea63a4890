// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The urllc-sched Authors

#include "urllc/policies.hpp"

#include <algorithm>
#include <string>

#include "urllc/errors.hpp"

namespace urllc {

std::string_view policy_name(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::Proposed: return "proposed";
    case PolicyKind::Baseline1: return "baseline1";
    case PolicyKind::Baseline2: return "baseline2";
    case PolicyKind::Wsrm: return "wsrm";
  }
  return "unknown";
}

std::optional<PolicyKind> parse_policy(std::string_view name) {
  for (auto k : {PolicyKind::Proposed, PolicyKind::Baseline1, PolicyKind::Baseline2,
                 PolicyKind::Wsrm})
    if (policy_name(k) == name) return k;
  return std::nullopt;
}

void PolicyConfig::validate() const {
  if ((kind == PolicyKind::Baseline1 || kind == PolicyKind::Baseline2) && !(static_v > 0.0))
    throw ArgumentError("static_v must be positive for the baseline policies");
}

std::vector<double> CellContext::rate_gains() const {
  std::vector<double> c(channel.csi_accuracy.size());
  for (std::size_t m = 0; m < c.size(); ++m)
    c[m] = 1.0 - channel.csi_accuracy[m] * channel.csi_accuracy[m];
  return c;
}

std::vector<double> CellContext::budget_weights() const {
  std::vector<double> w(omega.omegas.size());
  for (std::size_t m = 0; m < w.size(); ++m) w[m] = 1.0 / (channel.n_antennas * omega.omegas[m]);
  return w;
}

SlotDecision::SlotDecision(std::size_t ue_count)
    : control(ue_count, 0.0),
      aux(ue_count, 0.0),
      power(ue_count, 0.0),
      rate_se(ue_count, 0.0),
      rate_bits(ue_count, 0.0),
      rate_floor(ue_count, 0.0),
      infeasible(ue_count, false) {}

std::vector<double> SlotDecision::clipped_rate_bits(std::span<const UeProfile> profiles) const {
  std::vector<double> out(size());
  for (std::size_t m = 0; m < size(); ++m)
    out[m] = std::clamp(rate_bits[m], rate_floor[m], profiles[m].rate_max);
  return out;
}

namespace {

void check_shapes(const QueueBank* states, std::span<const UeProfile> profiles,
                  const CellContext& cell) {
  const std::size_t m = profiles.size();
  if (cell.omega.omegas.size() != m || cell.channel.ue_count() != m)
    throw ArgumentError("cell context does not match the UE profiles");
  if (states && states->size() != m) throw ArgumentError("queue state does not match UE profiles");
}

// Power step shared by every policy: water-fill against the given priorities,
// then map powers to rates.
void allocate_power(std::span<const double> priorities, const CellContext& cell,
                    const PolicyConfig& cfg, SlotDecision& d) {
  PowerProblem prob{std::vector<double>(priorities.begin(), priorities.end()), cell.rate_gains(),
                    cell.budget_weights(), cell.channel.power_budget};
  auto wf = waterfill(prob, cfg.waterfill);
  d.power = std::move(wf.powers);
  d.rate_se = rates_from_powers(d.power, cell.channel.csi_accuracy);
  for (std::size_t m = 0; m < d.size(); ++m) d.rate_bits[m] = d.rate_se[m] * cell.bits_per_se;
  d.budget_used = power_budget_used(d.power, cell.omega, cell.channel.n_antennas);
}

void fill_rate_floors(const QueueBank& states, std::span<const UeProfile> profiles, SlotDecision& d) {
  for (std::size_t m = 0; m < d.size(); ++m) {
    const auto floor = min_rate_floor(states.slot(), profiles[m], states.served_cum()[m]);
    d.rate_floor[m] = floor.value;
    d.infeasible[m] = floor.clamped;
  }
}

std::string slot_context(const QueueBank& states, std::size_t ue) {
  return " (slot " + std::to_string(states.slot()) + ", UE " + std::to_string(ue) + ")";
}

}  // namespace

SlotDecision decide_proposed(const QueueBank& states, std::span<const UeProfile> profiles,
                             const CellContext& cell, const PolicyConfig& cfg) {
  check_shapes(&states, profiles, cell);
  SlotDecision d(profiles.size());
  fill_rate_floors(states, profiles, d);

  const auto y = states.virtual_queues();
  for (std::size_t m = 0; m < d.size(); ++m) {
    const UeProfile& p = profiles[m];
    if (p.mean_arrival == 0.0) {
      d.control[m] = control_floor(y[m], p.arrival_cap);
      continue;
    }
    try {
      const auto floor = aux_floor(states.slot(), p, states.aux_cum()[m]);
      d.infeasible[m] = d.infeasible[m] || floor.clamped;
      AuxSubproblem sub;
      sub.virtual_queue = y[m];
      sub.aux_floor = floor.value;
      sub.aux_ceiling = p.rate_max;
      sub.control_floor = control_floor(y[m], p.arrival_cap);
      sub.pi = log_utility_slope_bound(p);
      sub.weight = p.weight;
      const auto res = solve_aux_ccp(sub, cfg.ccp);
      d.aux[m] = res.aux;
      d.control[m] = res.control;
      if (!res.converged) ++d.ccp_unconverged;
      if (res.at_nu_max) ++d.nu_at_max;
      if (y[m] > res.control * p.weight * sub.pi + p.arrival_cap + p.rate_max)
        ++d.vq_bound_violations;
    } catch (const ArgumentError& e) {
      throw ArgumentError(e.what() + slot_context(states, m));
    } catch (const NumericalError& e) {
      throw NumericalError(e.what() + slot_context(states, m));
    }
  }
  allocate_power(y, cell, cfg, d);
  return d;
}

SlotDecision decide_baseline(const QueueBank& states, std::span<const UeProfile> profiles,
                             const CellContext& cell, const PolicyConfig& cfg) {
  cfg.validate();
  check_shapes(&states, profiles, cell);
  SlotDecision d(profiles.size());
  fill_rate_floors(states, profiles, d);

  const auto y = states.virtual_queues();
  for (std::size_t m = 0; m < d.size(); ++m) {
    const UeProfile& p = profiles[m];
    double floor = p.rate_min;
    if (cfg.kind == PolicyKind::Baseline1) {
      const auto f = aux_floor(states.slot(), p, states.aux_cum()[m]);
      floor = f.value;
      d.infeasible[m] = d.infeasible[m] || f.clamped;
    }
    d.control[m] = cfg.static_v;
    d.aux[m] = static_control_aux(y[m], p.weight * cfg.static_v, floor, p.rate_max);
  }
  allocate_power(y, cell, cfg, d);
  return d;
}

SlotDecision decide_wsrm(std::span<const UeProfile> profiles, const CellContext& cell,
                         const PolicyConfig& cfg) {
  check_shapes(nullptr, profiles, cell);
  SlotDecision d(profiles.size());
  std::vector<double> weights(profiles.size());
  for (std::size_t m = 0; m < weights.size(); ++m) weights[m] = profiles[m].weight;
  allocate_power(weights, cell, cfg, d);
  return d;
}

SlotDecision decide(const QueueBank& states, std::span<const UeProfile> profiles,
                    const CellContext& cell, const PolicyConfig& cfg) {
  switch (cfg.kind) {
    case PolicyKind::Proposed: return decide_proposed(states, profiles, cell, cfg);
    case PolicyKind::Baseline1:
    case PolicyKind::Baseline2: return decide_baseline(states, profiles, cell, cfg);
    case PolicyKind::Wsrm: {
      SlotDecision d = decide_wsrm(profiles, cell, cfg);
      for (std::size_t m = 0; m < d.size(); ++m) {
        const auto floor = min_rate_floor(states.slot(), profiles[m], states.served_cum()[m]);
        d.rate_floor[m] = floor.value;
        d.infeasible[m] = floor.clamped;
      }
      return d;
    }
  }
  throw ArgumentError("unknown policy kind");
}

}  // namespace urllc
