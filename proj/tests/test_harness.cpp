// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The urllc-sched Authors

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"

#include "support.hpp"
#include "urllc/errors.hpp"
#include "urllc/harness.hpp"

using namespace urllc;

namespace {

PolicyConfig policy(PolicyKind kind) {
  PolicyConfig p;
  p.kind = kind;
  return p;
}

Trace simulate(const ScenarioConfig& cfg, PolicyKind kind, std::uint64_t k = 0) {
  const auto sc = generate_scenario(cfg, derive_seed(cfg.seed, k, 0));
  std::mt19937_64 rng(derive_seed(cfg.seed, k, 1));
  return run_realization(sc, policy(kind), cfg.horizon_slots, rng, cfg.traffic.packet_bits);
}

// One-UE trace whose queue stays at `queue` for `slots` slots.
std::pair<Trace, Scenario> constant_trace(const ScenarioConfig& cfg, double lambda, double queue, int slots) {
  Scenario sc;
  sc.profiles.push_back(test::make_profile(lambda, cfg.delay_bound_slots()));
  Trace t;
  t.ue_count = 1;
  for (int s = 0; s < slots; ++s) {
    TraceRecord r;
    r.slot = s + 1;
    r.queue_bits = queue;
    r.arrival_bits = lambda;
    r.rate_bits = lambda;
    r.delay_slots = queue / lambda;
    t.records.push_back(r);
  }
  t.final_queue = {queue};
  t.final_vqueue = {0.0};
  return {t, sc};
}

}  // namespace

TEST_CASE("zero-length horizon gives an empty trace") {
  auto cfg = test::small_config(3, 0, 1);
  const auto t = simulate(cfg, PolicyKind::Proposed);
  CHECK(t.records.empty());
  CHECK(t.slots() == 0);
  CHECK(t.final_queue == std::vector<double>(3, 0.0));
}

TEST_CASE("no traffic keeps every queue and delay at zero") {
  auto cfg = test::small_config(3, 100, 1);
  cfg.traffic.lambda_gbps = 0.0;
  for (auto k : {PolicyKind::Proposed, PolicyKind::Baseline1, PolicyKind::Baseline2, PolicyKind::Wsrm}) {
    const auto t = simulate(cfg, k);
    for (const auto& r : t.records) {
      CHECK(r.queue_bits == 0.0);
      CHECK(r.delay_slots == 0.0);
    }
  }
}

TEST_CASE("traces replay exactly and conserve bits") {
  const auto cfg = test::small_config(4, 300, 1);
  for (auto k : {PolicyKind::Proposed, PolicyKind::Baseline1, PolicyKind::Baseline2, PolicyKind::Wsrm}) {
    CAPTURE(policy_name(k));
    const auto t = simulate(cfg, k);
    CHECK(t.slots() == 300);
    CHECK(replay_queue_error(t) == 0.0);
    CHECK(conservation_error(t) <= 1e-6);
    CHECK(t.stats.max_budget_ratio <= 1.0 + 1e-6);
    for (const auto& r : t.records) {
      CHECK(r.queue_bits >= 0.0);
      CHECK(r.vqueue >= 0.0);
    }
  }
}

TEST_CASE("arrivals are shared across policies") {
  const auto cfg = test::small_config(3, 50, 1);
  const auto a = simulate(cfg, PolicyKind::Proposed);
  const auto b = simulate(cfg, PolicyKind::Baseline2);
  for (std::size_t i = 0; i < a.records.size(); ++i) CHECK(a.records[i].arrival_bits == b.records[i].arrival_bits);
}

TEST_CASE("aggregate of a constant queue") {
  auto cfg = test::small_config(1, 40, 1);
  cfg.warmup_fraction = 0.0;
  const double lambda = 1e5;
  const auto [trace, sc] = constant_trace(cfg, lambda, 5.0 * lambda, 40);
  const auto agg = aggregate_policy("p", {summarize(trace, sc, cfg)}, cfg);
  CHECK(agg.avg_latency_ms == doctest::Approx(5.0 * cfg.slot_ms));
  CHECK(agg.ccdf.front() == 1.0);
  CHECK(agg.violation_rate_pooled == 0.0);
  CHECK(agg.violation_rate_max == 0.0);
  CHECK(agg.avg_user_throughput_bps == doctest::Approx(lambda / cfg.slot_seconds()));
}

TEST_CASE("violations count delays at or above the bound") {
  auto cfg = test::small_config(1, 10, 1);
  cfg.warmup_fraction = 0.0;
  const double lambda = 10.0;
  const auto [trace, sc] = constant_trace(cfg, lambda, lambda * cfg.delay_bound_slots(), 10);
  const auto agg = aggregate_policy("p", {summarize(trace, sc, cfg)}, cfg);
  CHECK(agg.violation_rate_pooled == 1.0);
  CHECK(agg.ccdf_at_delay_bound == 0.0);  // strictly greater than the bound
}

TEST_CASE("warm-up slots are excluded") {
  auto cfg = test::small_config(1, 10, 1);
  cfg.warmup_fraction = 0.5;
  auto [trace, sc] = constant_trace(cfg, 1.0, 0.0, 10);
  for (int s = 0; s < 5; ++s) {
    trace.records[s].queue_bits = 1000.0;
    trace.records[s].delay_slots = 1000.0;
  }
  const auto summary = summarize(trace, sc, cfg);
  CHECK(summary.samples == 5);
  CHECK(summary.delay_slots_sum == 0.0);
}

TEST_CASE("aggregate rejects empty and inconsistent input") {
  const auto cfg = test::small_config(2, 40, 2);
  CHECK_THROWS_AS(aggregate_policy("p", {}, cfg), ArgumentError);
  const auto a = summarize(simulate(cfg, PolicyKind::Wsrm), generate_scenario(cfg, derive_seed(cfg.seed, 0, 0)), cfg);
  auto b = a;
  b.ue_violations.push_back(0);
  CHECK_THROWS_AS(aggregate_policy("p", {a, b}, cfg), ArgumentError);
}

TEST_CASE("experiment output does not depend on the worker count") {
  const auto cfg = test::small_config(4, 150, 5);
  const std::vector<PolicyConfig> pols{policy(PolicyKind::Proposed), policy(PolicyKind::Baseline2)};
  const auto a = run_experiment(cfg, pols, 1);
  const auto b = run_experiment(cfg, pols, 3);
  CHECK(to_json(a.metrics).dump() == to_json(b.metrics).dump());
}

TEST_CASE("ccdf is a non-increasing probability curve") {
  const auto cfg = test::small_config(4, 300, 3);
  const auto res = run_experiment(cfg, {policy(PolicyKind::Baseline2)}, 2);
  const auto& agg = res.metrics.policies.front();
  REQUIRE(agg.ccdf.size() == agg.ccdf_thresholds_ms.size());
  for (std::size_t i = 0; i < agg.ccdf.size(); ++i) {
    CHECK(agg.ccdf[i] >= 0.0);
    CHECK(agg.ccdf[i] <= 1.0);
    if (i) CHECK(agg.ccdf[i] <= agg.ccdf[i - 1]);
  }
  CHECK(agg.latency_ci_low <= agg.avg_latency_ms);
  CHECK(agg.latency_ci_high >= agg.avg_latency_ms);
}

TEST_CASE("trace sink receives every run and writes CSV") {
  const auto cfg = test::small_config(2, 20, 2);
  int calls = 0;
  const auto dir = std::filesystem::temp_directory_path() / "urllc_trace_test";
  std::filesystem::create_directories(dir);
  run_experiment(cfg, {policy(PolicyKind::Proposed), policy(PolicyKind::Wsrm)}, 2,
                 [&](std::string_view name, int k, const Trace& t, const Scenario&) {
                   ++calls;
                   write_trace_csv(t, (dir / (std::string(name) + std::to_string(k) + ".csv")).string());
                 });
  CHECK(calls == 4);
  std::ifstream in(dir / "proposed0.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header ==
        "slot,ue,arrival_bits,rate_bits,queue_bits,vqueue,aux,nu,power,delay_slots,infeasible,rate_clipped_bits");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == 40);
  std::filesystem::remove_all(dir);
}
