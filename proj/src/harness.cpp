// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The urllc-sched Authors

#include "urllc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "urllc/errors.hpp"

namespace urllc {

Trace run_realization(const Scenario& scenario, const PolicyConfig& policy, int slots,
                      std::mt19937_64& arrival_rng, double packet_bits) {
  policy.validate();
  const auto& profiles = scenario.profiles;
  const std::size_t m_count = profiles.size();

  Trace trace;
  trace.ue_count = m_count;
  trace.records.reserve(static_cast<std::size_t>(std::max(slots, 0)) * m_count);

  QueueBank bank(m_count);
  std::vector<double> arrivals(m_count);
  const double budget = scenario.cell.channel.power_budget;

  for (int s = 0; s < slots; ++s) {
    for (std::size_t m = 0; m < m_count; ++m)
      arrivals[m] = generate_arrival(profiles[m], packet_bits, arrival_rng);

    SlotDecision d;
    try {
      d = decide(bank, profiles, scenario.cell, policy);
    } catch (const ArgumentError& e) {
      throw ArgumentError(fmt::format("{} policy failed at slot {}: {}", policy_name(policy.kind),
                                      bank.slot(), e.what()));
    } catch (const NumericalError& e) {
      throw NumericalError(fmt::format("{} policy failed at slot {}: {}", policy_name(policy.kind),
                                       bank.slot(), e.what()));
    }

    const auto clipped = d.clipped_rate_bits(profiles);
    for (std::size_t m = 0; m < m_count; ++m) {
      TraceRecord r;
      r.slot = bank.slot();
      r.ue = static_cast<int>(m);
      r.arrival_bits = arrivals[m];
      r.rate_bits = d.rate_bits[m];
      r.rate_clipped_bits = clipped[m];
      r.queue_bits = bank.queues()[m];
      r.vqueue = bank.virtual_queues()[m];
      r.aux = d.aux[m];
      r.nu = d.control[m];
      r.power = d.power[m];
      r.delay_slots =
          profiles[m].mean_arrival > 0.0 ? delay_measure(r.queue_bits, profiles[m].mean_arrival) : 0.0;
      r.infeasible = d.infeasible[m];
      trace.records.push_back(r);
    }
    trace.stats.ccp_unconverged += d.ccp_unconverged;
    trace.stats.nu_at_max += d.nu_at_max;
    trace.stats.vq_bound_violations += d.vq_bound_violations;
    trace.stats.max_budget_ratio = std::max(trace.stats.max_budget_ratio, d.budget_used / budget);

    bank.advance(arrivals, d.rate_bits, d.aux);
  }
  trace.final_queue.assign(bank.queues().begin(), bank.queues().end());
  trace.final_vqueue.assign(bank.virtual_queues().begin(), bank.virtual_queues().end());
  return trace;
}

double replay_queue_error(const Trace& trace) {
  double worst = 0.0;
  const std::size_t n = trace.slots();
  for (std::size_t m = 0; m < trace.ue_count; ++m) {
    for (std::size_t s = 0; s < n; ++s) {
      const auto& r = trace.at(s, m);
      const double next = update_queue(r.queue_bits, r.rate_bits, r.arrival_bits);
      const double stored = s + 1 < n ? trace.at(s + 1, m).queue_bits : trace.final_queue[m];
      worst = std::max(worst, std::abs(next - stored));
    }
  }
  return worst;
}

double conservation_error(const Trace& trace) {
  double worst = 0.0;
  const std::size_t n = trace.slots();
  for (std::size_t m = 0; m < trace.ue_count; ++m) {
    double in = 0.0, out = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
      const auto& r = trace.at(s, m);
      in += r.arrival_bits;
      out += std::min(r.queue_bits, r.rate_bits);
    }
    const double initial = n ? trace.at(0, m).queue_bits : trace.final_queue[m];
    const double lhs = in - out;
    const double rhs = trace.final_queue[m] - initial;
    worst = std::max(worst, std::abs(lhs - rhs) / std::max({1.0, std::abs(in), std::abs(out)}));
  }
  return worst;
}

std::vector<double> ccdf_thresholds_ms(const ScenarioConfig& cfg) {
  const auto count = static_cast<std::size_t>(std::floor(cfg.ccdf_max_ms / cfg.ccdf_step_ms + 1e-9));
  std::vector<double> out(count + 1);
  for (std::size_t i = 0; i <= count; ++i) out[i] = static_cast<double>(i) * cfg.ccdf_step_ms;
  return out;
}

RealizationSummary summarize(const Trace& trace, const Scenario& scenario,
                             const ScenarioConfig& cfg) {
  const std::size_t m_count = trace.ue_count;
  const auto thresholds = ccdf_thresholds_ms(cfg);
  RealizationSummary s;
  s.ue_violations.assign(m_count, 0);
  s.ue_queue_first_half.assign(m_count, 0.0);
  s.ue_queue_second_half.assign(m_count, 0.0);
  s.ue_rate_bits_mean.assign(m_count, 0.0);
  s.ccdf_hist.assign(thresholds.size() + 1, 0);
  s.stats = trace.stats;

  const std::size_t total = trace.slots();
  const std::size_t warm = std::min<std::size_t>(cfg.warmup_slots(), total);
  const std::size_t kept = total - warm;
  const std::size_t split = warm + kept / 2;
  s.slots_per_ue = static_cast<std::int64_t>(kept);

  for (std::size_t m = 0; m < m_count; ++m) {
    const UeProfile& p = scenario.profiles[m];
    double first = 0.0, second = 0.0, rate = 0.0;
    for (std::size_t t = warm; t < total; ++t) {
      const auto& r = trace.at(t, m);
      (t < split ? first : second) += r.queue_bits;
      rate += r.rate_bits;
      s.rate_bits_sum += r.rate_bits;
      s.served_bits_sum += std::min(r.queue_bits, r.rate_bits);
      s.delay_slots_sum += r.delay_slots;
      if (r.infeasible) ++s.infeasible;
      if (r.delay_slots >= p.delay_bound) ++s.ue_violations[m];
      if (r.delay_slots > p.delay_bound) ++s.exceed_delay_bound;
      const double delay_ms = r.delay_slots * cfg.slot_ms;
      const auto below = std::lower_bound(thresholds.begin(), thresholds.end(), delay_ms) -
                         thresholds.begin();
      ++s.ccdf_hist[static_cast<std::size_t>(below)];
      ++s.samples;
    }
    const std::size_t n_first = split - warm, n_second = total - split;
    s.ue_queue_first_half[m] = n_first ? first / n_first : 0.0;
    s.ue_queue_second_half[m] = n_second ? second / n_second : 0.0;
    s.ue_rate_bits_mean[m] = kept ? rate / kept : 0.0;
  }
  return s;
}

const PolicyAggregate* MetricsAggregate::find(std::string_view policy) const {
  for (const auto& p : policies)
    if (p.policy == policy) return &p;
  return nullptr;
}

namespace {

struct MeanCi {
  double mean = 0.0, low = 0.0, high = 0.0;
};

// Normal-approximation 95% interval over per-realization values.
MeanCi mean_ci(const std::vector<double>& xs) {
  MeanCi out;
  if (xs.empty()) return out;
  double sum = 0.0;
  for (double x : xs) sum += x;
  out.mean = sum / xs.size();
  double half = 0.0;
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    half = 1.959963984540054 * std::sqrt(ss / (xs.size() - 1) / xs.size());
  }
  out.low = out.mean - half;
  out.high = out.mean + half;
  return out;
}

}  // namespace

PolicyAggregate aggregate_policy(std::string_view policy,
                                 const std::vector<RealizationSummary>& runs,
                                 const ScenarioConfig& cfg) {
  if (runs.empty()) throw ArgumentError("aggregate: no realizations for " + std::string(policy));
  const std::size_t m_count = runs.front().ue_violations.size();
  const std::size_t buckets = runs.front().ccdf_hist.size();
  for (const auto& r : runs)
    if (r.ue_violations.size() != m_count || r.ccdf_hist.size() != buckets ||
        r.slots_per_ue != runs.front().slots_per_ue)
      throw ArgumentError("aggregate: realizations have inconsistent shapes");

  PolicyAggregate agg;
  agg.policy = std::string(policy);
  agg.realizations = static_cast<int>(runs.size());
  agg.ccdf_thresholds_ms = ccdf_thresholds_ms(cfg);
  if (agg.ccdf_thresholds_ms.size() + 1 != buckets)
    throw ArgumentError("aggregate: CCDF grid does not match the configuration");

  std::vector<double> latency, throughput;
  std::vector<std::int64_t> hist(buckets, 0), violations(m_count, 0);
  std::int64_t samples = 0, infeasible = 0, exceed = 0;
  double served = 0.0;
  for (const auto& r : runs) {
    const double n = r.samples ? static_cast<double>(r.samples) : 1.0;
    latency.push_back(r.delay_slots_sum / n * cfg.slot_ms);
    throughput.push_back(r.rate_bits_sum / n / cfg.slot_seconds());
    served += r.served_bits_sum;
    samples += r.samples;
    infeasible += r.infeasible;
    exceed += r.exceed_delay_bound;
    for (std::size_t i = 0; i < buckets; ++i) hist[i] += r.ccdf_hist[i];
    for (std::size_t m = 0; m < m_count; ++m) violations[m] += r.ue_violations[m];
    agg.stats.ccp_unconverged += r.stats.ccp_unconverged;
    agg.stats.nu_at_max += r.stats.nu_at_max;
    agg.stats.vq_bound_violations += r.stats.vq_bound_violations;
    agg.stats.max_budget_ratio = std::max(agg.stats.max_budget_ratio, r.stats.max_budget_ratio);
  }
  const auto lat = mean_ci(latency);
  agg.avg_latency_ms = lat.mean;
  agg.latency_ci_low = lat.low;
  agg.latency_ci_high = lat.high;
  const auto thr = mean_ci(throughput);
  agg.avg_user_throughput_bps = thr.mean;
  agg.throughput_ci_low = thr.low;
  agg.throughput_ci_high = thr.high;

  const double total = samples ? static_cast<double>(samples) : 1.0;
  agg.served_throughput_bps = served / total / cfg.slot_seconds();
  agg.infeasibility_rate = infeasible / total;
  agg.ccdf_at_delay_bound = exceed / total;

  const double per_ue = static_cast<double>(runs.size()) * runs.front().slots_per_ue;
  std::int64_t pooled = 0;
  agg.reliability_violation_rate.resize(m_count);
  for (std::size_t m = 0; m < m_count; ++m) {
    agg.reliability_violation_rate[m] = per_ue > 0 ? violations[m] / per_ue : 0.0;
    agg.violation_rate_max = std::max(agg.violation_rate_max, agg.reliability_violation_rate[m]);
    pooled += violations[m];
  }
  agg.violation_rate_pooled = pooled / total;

  // Pr{delay > x_i}: samples whose bucket index (grid points below them) exceeds i.
  agg.ccdf.assign(agg.ccdf_thresholds_ms.size(), 0.0);
  std::int64_t tail = 0;
  for (std::size_t i = buckets - 1; i-- > 0;) {
    tail += hist[i + 1];
    agg.ccdf[i] = tail / total;
  }
  return agg;
}

ExperimentResult run_experiment(const ScenarioConfig& cfg, const std::vector<PolicyConfig>& policies,
                                int jobs, const TraceSink& sink) {
  cfg.validate();
  if (policies.empty()) throw ArgumentError("no policies selected");
  for (const auto& p : policies) p.validate();
  const int r_count = cfg.realizations;
  jobs = std::clamp(jobs, 1, r_count);

  std::vector<std::vector<RealizationSummary>> results(policies.size(),
                                                       std::vector<RealizationSummary>(r_count));
  std::vector<std::exception_ptr> errors(r_count);
  std::atomic<int> next{0};
  std::mutex sink_mutex;

  const auto worker = [&] {
    for (int k = next++; k < r_count; k = next++) {
      try {
        const Scenario sc = generate_scenario(cfg, derive_seed(cfg.seed, k, 0));
        for (std::size_t i = 0; i < policies.size(); ++i) {
          std::mt19937_64 rng(derive_seed(cfg.seed, k, 1));
          const Trace trace =
              run_realization(sc, policies[i], cfg.horizon_slots, rng, cfg.traffic.packet_bits);
          results[i][k] = summarize(trace, sc, cfg);
          if (sink) {
            std::lock_guard lock(sink_mutex);
            sink(policy_name(policies[i].kind), k, trace, sc);
          }
        }
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };

  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  ExperimentResult out;
  for (std::size_t i = 0; i < policies.size(); ++i) {
    const std::string name(policy_name(policies[i].kind));
    out.metrics.policies.push_back(aggregate_policy(name, results[i], cfg));
    out.runs[name] = std::move(results[i]);
  }
  return out;
}

nlohmann::json to_json(const PolicyAggregate& a) {
  nlohmann::json j;
  j["realizations"] = a.realizations;
  j["avg_latency_ms"] = a.avg_latency_ms;
  j["avg_latency_ci95"] = {a.latency_ci_low, a.latency_ci_high};
  j["avg_user_throughput_bps"] = a.avg_user_throughput_bps;
  j["avg_user_throughput_ci95"] = {a.throughput_ci_low, a.throughput_ci_high};
  j["served_throughput_bps"] = a.served_throughput_bps;
  j["reliability_violation_rate"] = a.reliability_violation_rate;
  j["violation_rate_pooled"] = a.violation_rate_pooled;
  j["violation_rate_max"] = a.violation_rate_max;
  j["ccdf_at_delay_bound"] = a.ccdf_at_delay_bound;
  j["latency_ccdf"] = {{"thresholds_ms", a.ccdf_thresholds_ms}, {"ccdf", a.ccdf}};
  j["infeasibility_rate"] = a.infeasibility_rate;
  j["solver"] = {{"ccp_unconverged", a.stats.ccp_unconverged},
                 {"nu_at_max", a.stats.nu_at_max},
                 {"vq_bound_violations", a.stats.vq_bound_violations},
                 {"max_budget_ratio", a.stats.max_budget_ratio}};
  return j;
}

nlohmann::json to_json(const MetricsAggregate& metrics) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& p : metrics.policies) j[p.policy] = to_json(p);
  return j;
}

void write_trace_csv(const Trace& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ArgumentError("cannot open trace file " + path);
  out << "slot,ue,arrival_bits,rate_bits,queue_bits,vqueue,aux,nu,power,delay_slots,infeasible,"
         "rate_clipped_bits\n";
  for (const auto& r : trace.records)
    out << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}\n", r.slot, r.ue, r.arrival_bits,
                       r.rate_bits, r.queue_bits, r.vqueue, r.aux, r.nu, r.power, r.delay_slots,
                       r.infeasible ? 1 : 0, r.rate_clipped_bits);
}

}  // namespace urllc
