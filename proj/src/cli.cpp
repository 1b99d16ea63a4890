// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The urllc-sched Authors

#include "urllc/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <thread>

#include <fmt/chrono.h>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "CLI11.hpp"

#include "urllc/simd/kernels.hpp"
#include "urllc/validation.hpp"

namespace urllc::cli {
namespace fs = std::filesystem;

namespace {

// Options shared by run and sweep. Later sources win:
// config file < dotted flags < --set < shortcut flags.
struct RunFlags {
  std::string config_path;
  std::map<std::string, std::string> dotted;
  std::vector<std::string> sets;
  std::optional<std::uint64_t> seed;
  std::optional<int> slots;
  std::optional<int> realizations;
  std::optional<std::string> policies;
  bool traces = false;
  int jobs = 0;
  std::string out_dir = "out";
};

void add_run_flags(CLI::App& cmd, RunFlags& f) {
  cmd.add_option("--config", f.config_path, "INI configuration file")->check(CLI::ExistingFile);
  cmd.add_option("--seed", f.seed, "master seed (scenario.seed)");
  cmd.add_option("--slots", f.slots, "horizon in slots (scenario.slots)");
  cmd.add_option("--realizations", f.realizations, "realizations (scenario.realizations)");
  cmd.add_option("--policies", f.policies, "comma list (policy.policies)");
  cmd.add_option("--jobs", f.jobs, "worker threads, 0 = hardware concurrency")->check(CLI::NonNegativeNumber);
  cmd.add_option("--out", f.out_dir, "output directory");
  cmd.add_flag("--traces", f.traces, "write per-realization trace CSVs (output.traces)");
  cmd.add_option("--set", f.sets, "section.key=value override, repeatable");
  for (const auto& key : config_keys()) {
    cmd.add_option_function<std::string>(
           "--" + key.name, [&f, name = key.name](const std::string& v) { f.dotted[name] = v; }, key.help)
        ->group("Config keys");
  }
}

RunConfig resolve(const RunFlags& f) {
  RunConfig cfg = f.config_path.empty() ? RunConfig{} : load_config(f.config_path);
  for (const auto& [k, v] : f.dotted) set_config_value(cfg, k, v);
  apply_overrides(cfg, f.sets);
  if (f.seed) cfg.scenario.seed = *f.seed;
  if (f.slots) cfg.scenario.horizon_slots = *f.slots;
  if (f.realizations) cfg.scenario.realizations = *f.realizations;
  if (f.policies) set_config_value(cfg, "policy.policies", *f.policies);
  if (f.traces) cfg.traces = true;
  cfg.validate();
  return cfg;
}

int jobs_or_default(int jobs) {
  return jobs > 0 ? jobs : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

std::string utc_timestamp() {
  return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(std::time(nullptr)));
}

nlohmann::json document(const RunConfig& cfg, const MetricsAggregate& metrics, int jobs) {
  return {{"generated_at", utc_timestamp()},
          {"runtime", {{"isa", simd::isa_name(simd::active().isa)}, {"jobs", jobs}}},
          {"body", document_body(cfg, metrics)}};
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ArgumentError("cannot write " + path.string());
  out << text;
  if (!out) throw ArgumentError("write failed: " + path.string());
}

void prepare_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ArgumentError(fmt::format("cannot create output directory {}: {}", dir.string(), ec.message()));
}

ExperimentResult execute(const RunConfig& cfg, int jobs, const fs::path& out_dir) {
  TraceSink sink;
  if (cfg.traces) {
    prepare_dir(out_dir / "traces");
    sink = [dir = out_dir / "traces"](std::string_view policy, int k, const Trace& trace, const Scenario&) {
      write_trace_csv(trace, (dir / fmt::format("{}_r{}.csv", policy, k)).string());
    };
  }
  return run_experiment(cfg.scenario, cfg.policy_configs(), jobs, sink);
}

void print_summary(std::ostream& out, const MetricsAggregate& metrics) {
  for (const auto& p : metrics.policies) {
    fmt::print(out, "{:<10} avg latency {:.4f} ms [{:.4f}, {:.4f}]  avgUT {:.4f} Gbps  violation rate {:.4f} (worst UE {:.4f})\n",
               p.policy, p.avg_latency_ms, p.latency_ci_low, p.latency_ci_high,
               p.avg_user_throughput_bps / 1e9, p.violation_rate_pooled, p.violation_rate_max);
  }
}

int cmd_run(const RunFlags& flags, std::ostream& out) {
  const RunConfig cfg = resolve(flags);
  const fs::path dir = flags.out_dir;
  prepare_dir(dir);
  const int jobs = jobs_or_default(flags.jobs);
  const auto result = execute(cfg, jobs, dir);
  write_text(dir / "aggregate.json", document(cfg, result.metrics, jobs).dump(2) + "\n");
  write_text(dir / "config.ini", config_to_ini(cfg));
  print_summary(out, result.metrics);
  return kExitOk;
}

std::string csv_escape(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

int cmd_sweep(const RunFlags& flags, const std::string& var, const std::vector<std::string>& values,
              std::ostream& out, std::ostream& err) {
  if (var != "lambda_gbps" && var != "ue_count")
    throw ArgumentError("--sweep-var must be lambda_gbps or ue_count");
  if (values.empty()) throw ArgumentError("--sweep-values is empty");
  const RunConfig base = resolve(flags);
  const std::string key = var == "lambda_gbps" ? "traffic.lambda_gbps" : "scenario.ue_count";
  // Reject malformed points before any work starts.
  for (const auto& v : values) {
    RunConfig probe = base;
    set_config_value(probe, key, v);
  }

  const fs::path dir = flags.out_dir;
  prepare_dir(dir / "points");
  const int jobs = jobs_or_default(flags.jobs);
  std::string csv = "sweep_value,policy,avg_latency_ms,ci_low,ci_high,avgut_gbps,violation_rate,status\n";
  int failures = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    RunConfig cfg = base;
    set_config_value(cfg, key, values[i]);
    const fs::path point_dir = dir / "points" / fmt::format("{}_{}", var, values[i]);
    try {
      cfg.validate();
      prepare_dir(point_dir);
      const auto result = execute(cfg, jobs, point_dir);
      write_text(point_dir / "aggregate.json", document(cfg, result.metrics, jobs).dump(2) + "\n");
      for (const auto& p : result.metrics.policies) {
        csv += fmt::format("{},{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},ok\n", values[i], p.policy,
                           p.avg_latency_ms, p.latency_ci_low, p.latency_ci_high,
                           p.avg_user_throughput_bps / 1e9, p.violation_rate_pooled);
      }
      fmt::print(out, "{} = {}\n", var, values[i]);
      print_summary(out, result.metrics);
    } catch (const std::exception& e) {
      ++failures;
      fmt::print(err, "error: {} = {}: {}\n", var, values[i], e.what());
      for (auto kind : cfg.policies)
        csv += fmt::format("{},{},nan,nan,nan,nan,nan,{}\n", values[i], policy_name(kind),
                           csv_escape(std::string("error: ") + e.what()));
    }
  }
  write_text(dir / "sweep.csv", csv);
  return failures ? kExitNumerical : kExitOk;
}

int cmd_validate(const std::vector<std::string>& only, std::optional<double> tolerance,
                 std::optional<std::uint64_t> seed, std::ostream& out) {
  validation::Options opts;
  opts.tolerance = tolerance;
  if (seed) opts.seed = *seed;
  bool all_passed = true;
  for (const auto& r : validation::run_checks(only, opts)) {
    all_passed = all_passed && r.passed;
    fmt::print(out, "{} {:<9} measured {:.6e}  tolerance {:.3e}  | {}\n", r.passed ? "PASS" : "FAIL", r.name,
               r.measured, r.tolerance, r.detail);
  }
  return all_passed ? kExitOk : kExitValidation;
}

}  // namespace

nlohmann::json document_body(const RunConfig& cfg, const MetricsAggregate& metrics) {
  auto seeds = nlohmann::json::array();
  for (int k = 0; k < cfg.scenario.realizations; ++k) {
    seeds.push_back({{"realization", k},
                     {"scenario", derive_seed(cfg.scenario.seed, k, 0)},
                     {"arrivals", derive_seed(cfg.scenario.seed, k, 1)}});
  }
  return {{"config", config_to_json(cfg)},
          {"seeds", {{"master", cfg.scenario.seed}, {"realizations", seeds}}},
          {"metrics", to_json(metrics)}};
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Latency-constrained massive-MIMO scheduling simulator", "urllc"};
  app.require_subcommand(1);

  RunFlags run_flags;
  auto* run = app.add_subcommand("run", "simulate every selected policy on R realizations");
  add_run_flags(*run, run_flags);

  RunFlags sweep_flags;
  std::string sweep_var = "lambda_gbps";
  std::vector<std::string> sweep_values;
  auto* sweep = app.add_subcommand("sweep", "repeat run over values of one variable");
  add_run_flags(*sweep, sweep_flags);
  sweep->add_option("--sweep-var", sweep_var, "lambda_gbps or ue_count")
      ->check(CLI::IsMember({"lambda_gbps", "ue_count"}));
  sweep->add_option("--sweep-values", sweep_values, "comma-separated values")->delimiter(',')->required();

  std::vector<std::string> only;
  std::optional<double> tolerance;
  std::optional<std::uint64_t> validate_seed;
  auto* validate = app.add_subcommand("validate", "run the solver oracle checks");
  validate->add_option("--only", only, "check name, repeatable or comma-separated")
      ->delimiter(',')
      ->check(CLI::IsMember(validation::check_names()));
  validate->add_option("--tolerance", tolerance, "replace every tolerance");
  validate->add_option("--seed", validate_seed, "seed of the randomized instances");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run) return cmd_run(run_flags, out);
    if (*sweep) return cmd_sweep(sweep_flags, sweep_var, sweep_values, out, err);
    return cmd_validate(only, tolerance, validate_seed, out);
  } catch (const ArgumentError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitNumerical;
  }
}

}  // namespace urllc::cli
