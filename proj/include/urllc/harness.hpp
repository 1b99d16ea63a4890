// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The urllc-sched Authors

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "urllc/policies.hpp"
#include "urllc/scenario.hpp"

namespace urllc {

struct TraceRecord {
  std::int64_t slot = 0;
  int ue = 0;
  double arrival_bits = 0.0;
  double rate_bits = 0.0;
  double rate_clipped_bits = 0.0;
  double queue_bits = 0.0;  // Q(t), seen by the decision
  double vqueue = 0.0;      // Y(t)
  double aux = 0.0;
  double nu = 0.0;
  double power = 0.0;
  double delay_slots = 0.0;
  bool infeasible = false;
};

struct SolverStats {
  std::int64_t ccp_unconverged = 0;
  std::int64_t nu_at_max = 0;
  std::int64_t vq_bound_violations = 0;
  double max_budget_ratio = 0.0;  // max over slots of used / P
};

// Slot-major records (slot 1 UE 0, slot 1 UE 1, ...).
struct Trace {
  std::size_t ue_count = 0;
  std::vector<TraceRecord> records;
  std::vector<double> final_queue;    // Q(T+1)
  std::vector<double> final_vqueue;   // Y(T+1)
  SolverStats stats;

  std::size_t slots() const { return ue_count ? records.size() / ue_count : 0; }
  const TraceRecord& at(std::size_t slot_index, std::size_t ue) const {
    return records[slot_index * ue_count + ue];
  }
};

// Simulates T slots: arrivals, policy decision, queue and virtual-queue update.
// Solver failures are rethrown with the slot identified.
Trace run_realization(const Scenario& scenario, const PolicyConfig& policy, int slots,
                      std::mt19937_64& arrival_rng, double packet_bits);

// Largest |Q_stored(t+1) - update_queue(Q(t), r(t), a(t))| over the trace;
// zero when the stored sequence follows the recursion exactly.
double replay_queue_error(const Trace& trace);

// Sum a - sum min(Q, r) vs final - initial queue, relative, worst UE.
double conservation_error(const Trace& trace);

// Sufficient statistics of one (policy, realization) run, post warm-up.
struct RealizationSummary {
  std::int64_t samples = 0;  // slots x UEs
  double delay_slots_sum = 0.0;
  double rate_bits_sum = 0.0;
  double served_bits_sum = 0.0;
  std::int64_t infeasible = 0;
  std::vector<std::int64_t> ue_violations;   // Q/lambda >= d_th
  std::vector<double> ue_queue_first_half;   // mean Q per UE
  std::vector<double> ue_queue_second_half;
  std::vector<double> ue_rate_bits_mean;
  std::int64_t exceed_delay_bound = 0;       // Q/lambda > d_th
  std::vector<std::int64_t> ccdf_hist;       // bucket i = number of grid thresholds below the sample
  std::int64_t slots_per_ue = 0;
  SolverStats stats;
};

std::vector<double> ccdf_thresholds_ms(const ScenarioConfig& cfg);

RealizationSummary summarize(const Trace& trace, const Scenario& scenario,
                             const ScenarioConfig& cfg);

struct PolicyAggregate {
  std::string policy;
  int realizations = 0;
  double avg_latency_ms = 0.0;
  double latency_ci_low = 0.0;
  double latency_ci_high = 0.0;
  double avg_user_throughput_bps = 0.0;
  double throughput_ci_low = 0.0;
  double throughput_ci_high = 0.0;
  double served_throughput_bps = 0.0;
  std::vector<double> reliability_violation_rate;  // per UE index
  double violation_rate_pooled = 0.0;
  double violation_rate_max = 0.0;
  double ccdf_at_delay_bound = 0.0;                // Pr{delay > d_th}
  std::vector<double> ccdf_thresholds_ms;
  std::vector<double> ccdf;                        // Pr{delay > x}
  double infeasibility_rate = 0.0;
  SolverStats stats;
};

struct MetricsAggregate {
  std::vector<PolicyAggregate> policies;
  const PolicyAggregate* find(std::string_view policy) const;
};

// Deterministic fold over summaries ordered by realization index.
// Throws ArgumentError on empty or shape-inconsistent input.
PolicyAggregate aggregate_policy(std::string_view policy,
                                 const std::vector<RealizationSummary>& runs,
                                 const ScenarioConfig& cfg);

// Called once per (policy, realization) with the full trace; calls are serialized.
using TraceSink = std::function<void(std::string_view policy, int realization, const Trace&,
                                     const Scenario&)>;

struct ExperimentResult {
  std::map<std::string, std::vector<RealizationSummary>> runs;  // policy -> by realization
  MetricsAggregate metrics;
};

// Runs every policy on R independent scenarios. Realization k uses seeds
// derived from (cfg.seed, k) only; arrivals are shared across policies.
// Output is identical for any jobs >= 1.
ExperimentResult run_experiment(const ScenarioConfig& cfg, const std::vector<PolicyConfig>& policies,
                                int jobs, const TraceSink& sink = {});

nlohmann::json to_json(const PolicyAggregate& agg);
nlohmann::json to_json(const MetricsAggregate& metrics);

// CSV columns: slot,ue,arrival_bits,rate_bits,queue_bits,vqueue,aux,nu,power,delay_slots,infeasible,
// followed by rate_clipped_bits (rate clipped into [r0, r_max]).
void write_trace_csv(const Trace& trace, const std::string& path);

}  // namespace urllc
