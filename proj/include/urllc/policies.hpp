// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The urllc-sched Authors

#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "urllc/channel.hpp"
#include "urllc/latency_control.hpp"
#include "urllc/power_alloc.hpp"
#include "urllc/traffic.hpp"

namespace urllc {

enum class PolicyKind {
  Proposed,   // dynamic control parameter chosen by CCP each slot
  Baseline1,  // static V, latency-derived aux floor
  Baseline2,  // static V, aux floor = r_min
  Wsrm,       // queue-oblivious weighted sum rate
};

std::string_view policy_name(PolicyKind kind);
std::optional<PolicyKind> parse_policy(std::string_view name);

struct PolicyConfig {
  PolicyKind kind = PolicyKind::Proposed;
  double static_v = 100.0;
  CcpOptions ccp;
  WaterfillOptions waterfill;

  void validate() const;
};

// Everything the per-slot decision needs about the physical layer.
struct CellContext {
  ChannelParams channel;
  OmegaSolution omega;
  double bits_per_se = 1.0;  // bandwidth [Hz] * slot duration [s]

  std::vector<double> rate_gains() const;      // 1 - tau^2
  std::vector<double> budget_weights() const;  // 1 / (N Omega)
};

struct SlotDecision {
  std::vector<double> control;    // nu
  std::vector<double> aux;        // phi, bits/slot
  std::vector<double> power;
  std::vector<double> rate_se;    // bits/s/Hz
  std::vector<double> rate_bits;  // bits/slot
  std::vector<double> rate_floor; // r0(t), bits/slot
  std::vector<bool> infeasible;   // a latency floor had to be clamped to r_max
  double budget_used = 0.0;
  int ccp_unconverged = 0;
  int nu_at_max = 0;
  int vq_bound_violations = 0;

  explicit SlotDecision(std::size_t ue_count = 0);
  std::size_t size() const { return power.size(); }

  // r clipped into [r0, r_max], kept next to the raw rate for analysis.
  std::vector<double> clipped_rate_bits(std::span<const UeProfile> profiles) const;
};

SlotDecision decide_proposed(const QueueBank& states, std::span<const UeProfile> profiles,
                             const CellContext& cell, const PolicyConfig& cfg);
SlotDecision decide_baseline(const QueueBank& states, std::span<const UeProfile> profiles,
                             const CellContext& cell, const PolicyConfig& cfg);
SlotDecision decide_wsrm(std::span<const UeProfile> profiles, const CellContext& cell,
                         const PolicyConfig& cfg);

// Dispatches on cfg.kind.
SlotDecision decide(const QueueBank& states, std::span<const UeProfile> profiles,
                    const CellContext& cell, const PolicyConfig& cfg);

}  // namespace urllc
