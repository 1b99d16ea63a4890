// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The urllc-sched Authors

// Acceptance suite: one PASS/FAIL line per criterion.
//   urllc_acceptance                  all criteria
//   urllc_acceptance --criterion 7    a single criterion

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"

#include "urllc/cli.hpp"
#include "urllc/harness.hpp"
#include "urllc/validation.hpp"

using namespace urllc;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Desk-scale trend setup: R = 500, T = 1000, 16 UEs in the 0.25 km^2 cell.
ScenarioConfig trend_config() {
  ScenarioConfig cfg;
  cfg.realizations = 500;
  cfg.horizon_slots = 1000;
  cfg.ue_count = 16;
  return cfg;
}

int g_jobs = 1;

PolicyConfig policy(PolicyKind kind) {
  PolicyConfig p;
  p.kind = kind;
  return p;
}

ExperimentResult run_at(double lambda_gbps, std::vector<PolicyKind> kinds) {
  auto cfg = trend_config();
  cfg.traffic.lambda_gbps = lambda_gbps;
  std::vector<PolicyConfig> pols;
  for (auto k : kinds) pols.push_back(policy(k));
  return run_experiment(cfg, pols, g_jobs);
}

// Single-cell capacity proxy: per-UE average rate of the queue-oblivious
// policy. Its allocation ignores traffic, so any lambda gives the same value.
double wsrm_capacity_gbps() {
  static const double value = [] {
    const auto res = run_at(trend_config().traffic.lambda_gbps, {PolicyKind::Wsrm});
    return res.metrics.find("wsrm")->avg_user_throughput_bps / 1e9;
  }();
  return value;
}

Outcome from_check(const validation::CheckResult& r, const std::string& prefix = {}) {
  return {r.passed, fmt::format("{}measured {:.4e}, tolerance {:.1e}; {}", prefix, r.measured, r.tolerance, r.detail)};
}

Outcome criterion_1() { return from_check(validation::check_omega()); }
Outcome criterion_2() { return from_check(validation::check_waterfill()); }
Outcome criterion_3() { return from_check(validation::check_ccp()); }
Outcome criterion_4() { return from_check(validation::check_mc()); }
Outcome criterion_5() { return from_check(validation::check_queue()); }

Outcome criterion_6() {
  const double lambda = 0.25 * wsrm_capacity_gbps();
  const auto res = run_at(lambda, {PolicyKind::Proposed});
  const auto& runs = res.runs.at("proposed");
  const std::size_t m_count = runs.front().ue_queue_first_half.size();
  double worst = 0.0;
  for (std::size_t m = 0; m < m_count; ++m) {
    double first = 0.0, second = 0.0;
    for (const auto& r : runs) {
      first += r.ue_queue_first_half[m];
      second += r.ue_queue_second_half[m];
    }
    const double ratio = first > 0.0 ? second / first : (second > 0.0 ? INFINITY : 0.0);
    worst = std::max(worst, ratio);
  }
  return {worst <= 1.1, fmt::format("lambda = {:.4f} Gbps (25% of WSRM avgUT {:.4f}); worst per-UE second/first-half "
                                    "mean queue ratio {:.4f} (<= 1.1)",
                                    lambda, wsrm_capacity_gbps(), worst)};
}

Outcome criterion_7() {
  const double lambda = 0.8 * wsrm_capacity_gbps();
  const auto res = run_at(lambda, {PolicyKind::Proposed, PolicyKind::Baseline1, PolicyKind::Baseline2});
  const auto& p = *res.metrics.find("proposed");
  const auto& b1 = *res.metrics.find("baseline1");
  const auto& b2 = *res.metrics.find("baseline2");
  const bool ordered = p.avg_latency_ms <= b1.avg_latency_ms && b1.avg_latency_ms <= b2.avg_latency_ms;
  const bool separated = p.latency_ci_high < b2.latency_ci_low;
  const double reduction = 1.0 - p.avg_latency_ms / b2.avg_latency_ms;
  return {ordered && separated && reduction >= 0.4,
          fmt::format("lambda = {:.4f} Gbps; latency ms proposed {:.4f} [{:.4f}, {:.4f}], baseline1 {:.4f}, "
                      "baseline2 {:.4f} [{:.4f}, {:.4f}]; ordered {}, CIs disjoint {}, reduction {:.1f}% (>= 40%)",
                      lambda, p.avg_latency_ms, p.latency_ci_low, p.latency_ci_high, b1.avg_latency_ms,
                      b2.avg_latency_ms, b2.latency_ci_low, b2.latency_ci_high, ordered, separated,
                      100.0 * reduction)};
}

Outcome criterion_8() {
  const double lambda = 0.6 * wsrm_capacity_gbps();
  const auto res = run_at(lambda, {PolicyKind::Proposed, PolicyKind::Baseline2});
  const auto& p = *res.metrics.find("proposed");
  const auto& b2 = *res.metrics.find("baseline2");
  constexpr double kEps = 0.05;
  const bool reliable = p.violation_rate_max <= kEps;
  const bool ordered = b2.violation_rate_pooled > p.violation_rate_pooled;
  return {reliable && ordered,
          fmt::format("lambda = {:.4f} Gbps; proposed worst-UE Pr{{Q/lambda >= d_th}} = {:.5f} (<= {}), pooled {:.5f}; "
                      "baseline2 pooled {:.5f} (must exceed proposed)",
                      lambda, p.violation_rate_max, kEps, p.violation_rate_pooled, b2.violation_rate_pooled)};
}

Outcome criterion_9() {
  const auto res = run_at(2.0, {PolicyKind::Proposed, PolicyKind::Wsrm});
  const double p = res.metrics.find("proposed")->avg_user_throughput_bps;
  const double w = res.metrics.find("wsrm")->avg_user_throughput_bps;
  return {p >= 0.75 * w, fmt::format("lambda = 2 Gbps; avgUT proposed {:.4f} Gbps, wsrm {:.4f} Gbps, ratio {:.3f} "
                                     "(>= 0.75)",
                                     p / 1e9, w / 1e9, p / w)};
}

Outcome criterion_10() {
  const double lambda = 0.8 * wsrm_capacity_gbps();
  const auto res = run_at(lambda, {PolicyKind::Proposed, PolicyKind::Baseline1, PolicyKind::Baseline2,
                                   PolicyKind::Wsrm});
  bool monotone = true;
  for (const auto& agg : res.metrics.policies)
    for (std::size_t i = 0; i < agg.ccdf.size(); ++i)
      if (agg.ccdf[i] < 0.0 || agg.ccdf[i] > 1.0 || (i && agg.ccdf[i] > agg.ccdf[i - 1])) monotone = false;

  // Paired bootstrap over realizations (arrivals and placements are shared).
  const auto& p = res.runs.at("proposed");
  const auto& b2 = res.runs.at("baseline2");
  const std::size_t r_count = p.size();
  constexpr int kResamples = 2000;
  std::mt19937_64 rng(2026);
  std::uniform_int_distribution<std::size_t> pick(0, r_count - 1);
  int below = 0;
  for (int b = 0; b < kResamples; ++b) {
    std::int64_t ep = 0, eb = 0, n = 0;
    for (std::size_t i = 0; i < r_count; ++i) {
      const std::size_t k = pick(rng);
      ep += p[k].exceed_delay_bound;
      eb += b2[k].exceed_delay_bound;
      n += p[k].samples;
    }
    if (n > 0 && ep <= eb) ++below;
  }
  const double share = static_cast<double>(below) / kResamples;
  return {monotone && share >= 0.95,
          fmt::format("lambda = {:.4f} Gbps; CCDFs monotone {}; CCDF at d_th proposed {:.5f}, baseline2 {:.5f}; "
                      "proposed <= baseline2 in {:.1f}% of {} bootstrap resamples (>= 95%)",
                      lambda, monotone, res.metrics.find("proposed")->ccdf_at_delay_bound,
                      res.metrics.find("baseline2")->ccdf_at_delay_bound, 100.0 * share, kResamples)};
}

Outcome criterion_11() {
  namespace fs = std::filesystem;
  const auto base = fs::temp_directory_path() / fmt::format("urllc_acceptance_{}", std::random_device{}());
  const int many = std::max(4u, std::thread::hardware_concurrency());
  std::string bodies[2];
  for (int i = 0; i < 2; ++i) {
    const auto dir = base / std::to_string(i);
    std::ostringstream out, err;
    const int code = cli::run_cli({"run", "--realizations", "24", "--slots", "300", "--seed", "20260101", "--jobs",
                                   std::to_string(i == 0 ? 1 : many), "--out", dir.string()},
                                  out, err);
    if (code != 0) return {false, "run failed: " + err.str()};
    std::ifstream in(dir / "aggregate.json");
    bodies[i] = nlohmann::json::parse(in)["body"].dump();
  }
  fs::remove_all(base);
  const bool same = bodies[0] == bodies[1];
  return {same, fmt::format("aggregate JSON body with --jobs 1 vs --jobs {}: {} ({} bytes)", many,
                            same ? "byte-identical" : "DIFFERENT", bodies[0].size())};
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
  double time_limit_s;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "omega fixed point vs closed form and explicit residual", criterion_1, 60},
      {2, "water-filling vs simplex grid, KKT, exact cases", criterion_2, 60},
      {3, "CCP descent, feasibility, grid agreement, convergence rate", criterion_3, 60},
      {4, "deterministic equivalent vs Monte Carlo, gap strictly decreasing in N", criterion_4, 120},
      {5, "queue recursion and conservation on 1e6 steps", criterion_5, 60},
      {6, "low-load stability of the proposed policy", criterion_6, 0},
      {7, "policy ordering at high load", criterion_7, 0},
      {8, "reliability at moderate load", criterion_8, 0},
      {9, "throughput retention at 2 Gbps", criterion_9, 0},
      {10, "CCDF sanity and bootstrap ordering at d_th", criterion_10, 0},
      {11, "determinism across worker counts", criterion_11, 0},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> selected;
  app.add_option("--criterion", selected, "criterion number, repeatable")->check(CLI::Range(1, 11));
  app.add_option("--jobs", g_jobs, "worker threads for the trend runs, 0 = hardware concurrency");
  CLI11_PARSE(app, argc, argv);
  if (g_jobs <= 0) g_jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  bool all_passed = true;
  for (const auto& c : criteria()) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit_s > 0 && secs >= c.time_limit_s) {
      o.pass = false;
      o.detail += fmt::format("; runtime over the {:.0f} s limit", c.time_limit_s);
    }
    all_passed = all_passed && o.pass;
    std::printf("%s criterion %d: %s | %s | %.1f s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str(),
                secs);
    std::fflush(stdout);
  }
  return all_passed ? 0 : 1;
}
