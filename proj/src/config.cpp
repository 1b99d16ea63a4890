// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The urllc-sched Authors

#include "urllc/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>
#include <type_traits>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

namespace urllc {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(std::string_view key, std::string_view text) {
  text = trim(text);
  T out{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ConfigError(fmt::format("invalid value '{}' for key '{}'", text, key));
  return out;
}

bool parse_bool(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ConfigError(fmt::format("invalid boolean '{}' for key '{}'", text, key));
}

template <class T>
T parse_value(std::string_view key, std::string_view text) {
  if constexpr (std::is_same_v<T, bool>) {
    return parse_bool(key, text);
  } else if constexpr (std::is_same_v<T, std::vector<PolicyKind>>) {
    try {
      return parse_policy_list(text);
    } catch (const ArgumentError& e) {
      throw ConfigError(fmt::format("key '{}': {}", key, e.what()));
    }
  } else {
    return parse_number<T>(key, text);
  }
}

template <class T>
nlohmann::json json_value(const T& v) {
  if constexpr (std::is_same_v<T, std::vector<PolicyKind>>) {
    auto arr = nlohmann::json::array();
    for (auto k : v) arr.push_back(std::string(policy_name(k)));
    return arr;
  } else {
    return v;
  }
}

template <class T>
std::string text_value(const T& v) {
  if constexpr (std::is_same_v<T, bool>) {
    return v ? "true" : "false";
  } else if constexpr (std::is_same_v<T, std::vector<PolicyKind>>) {
    std::string out;
    for (auto k : v) out += (out.empty() ? "" : ",") + std::string(policy_name(k));
    return out;
  } else {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);  // shortest round-trip form
    return std::string(buf, res.ptr);
  }
}

struct Field {
  ConfigKey key;
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<nlohmann::json(const RunConfig&)> get;
  std::function<std::string(const RunConfig&)> text;
};

template <class Access>
Field field(std::string name, std::string help, Access access) {
  using T = std::remove_cvref_t<decltype(access(std::declval<RunConfig&>()))>;
  Field f;
  f.key = {name, std::move(help)};
  f.set = [access, name](RunConfig& c, std::string_view v) { access(c) = parse_value<T>(name, v); };
  f.get = [access](const RunConfig& c) { return json_value(access(c)); };
  f.text = [access](const RunConfig& c) { return text_value(access(c)); };
  return f;
}

#define URLLC_FIELD(name, help, expr) field(name, help, [](auto& c) -> auto& { return c.expr; })

const std::vector<Field>& fields() {
  static const std::vector<Field> all{
      URLLC_FIELD("scenario.n_antennas", "MBS antennas N", scenario.n_antennas),
      URLLC_FIELD("scenario.power_dbm", "total transmit power budget [dBm]", scenario.power_dbm),
      URLLC_FIELD("scenario.area_km", "side of the square cell [km]", scenario.area_km),
      URLLC_FIELD("scenario.ue_count", "UEs per realization", scenario.ue_count),
      URLLC_FIELD("scenario.min_distance_m", "minimum MBS-UE distance [m]", scenario.min_distance_m),
      URLLC_FIELD("scenario.bandwidth_hz", "system bandwidth [Hz]", scenario.bandwidth_hz),
      URLLC_FIELD("scenario.slot_ms", "slot duration [ms]", scenario.slot_ms),
      URLLC_FIELD("scenario.slots", "horizon T [slots]", scenario.horizon_slots),
      URLLC_FIELD("scenario.realizations", "independent realizations R", scenario.realizations),
      URLLC_FIELD("scenario.seed", "master RNG seed", scenario.seed),
      URLLC_FIELD("scenario.warmup_fraction", "leading fraction of slots excluded from metrics",
                  scenario.warmup_fraction),
      URLLC_FIELD("scenario.ccdf_max_ms", "largest CCDF threshold [ms]", scenario.ccdf_max_ms),
      URLLC_FIELD("scenario.ccdf_step_ms", "CCDF threshold spacing [ms]", scenario.ccdf_step_ms),
      URLLC_FIELD("traffic.lambda_gbps", "mean arrival rate per UE [Gbps]", scenario.traffic.lambda_gbps),
      URLLC_FIELD("traffic.delay_bound_ms", "delay bound d_th [ms]", scenario.traffic.delay_bound_ms),
      URLLC_FIELD("traffic.reliability_eps", "violation probability bound", scenario.traffic.reliability_eps),
      URLLC_FIELD("traffic.rate_max_factor", "r_max as a multiple of lambda", scenario.traffic.rate_max_factor),
      URLLC_FIELD("traffic.rate_min_factor", "r_min as a multiple of lambda", scenario.traffic.rate_min_factor),
      URLLC_FIELD("traffic.arrival_cap_factor", "a_max as a multiple of lambda",
                  scenario.traffic.arrival_cap_factor),
      URLLC_FIELD("traffic.packet_bits", "packet size [bits]", scenario.traffic.packet_bits),
      URLLC_FIELD("traffic.csi_accuracy", "CSI error tau in [0, 1]", scenario.traffic.csi_accuracy),
      URLLC_FIELD("traffic.weight", "utility weight w", scenario.traffic.weight),
      URLLC_FIELD("channel.alpha", "RZF regularization", scenario.alpha),
      URLLC_FIELD("channel.pathloss_intercept_db", "path loss at 1 m [dB]", scenario.pathloss.intercept_db),
      URLLC_FIELD("channel.pathloss_exponent", "path-loss exponent", scenario.pathloss.exponent),
      URLLC_FIELD("channel.noise_psd_dbm_per_hz", "thermal noise PSD [dBm/Hz]", scenario.noise.psd_dbm_per_hz),
      URLLC_FIELD("channel.noise_figure_db", "receiver noise figure [dB]", scenario.noise.noise_figure_db),
      URLLC_FIELD("channel.omega_tol", "fixed-point residual tolerance", scenario.omega_tol),
      URLLC_FIELD("channel.omega_max_iter", "fixed-point iteration cap", scenario.omega_max_iter),
      URLLC_FIELD("solver.ccp_tol", "CCP objective-change tolerance", ccp.tol),
      URLLC_FIELD("solver.ccp_max_iter", "CCP iteration cap", ccp.max_iter),
      URLLC_FIELD("solver.nu_max_factor", "safety factor of the nu search ceiling", ccp.nu_max_factor),
      URLLC_FIELD("solver.ccp_two_sided_start", "also start CCP from the nu ceiling", ccp.two_sided_start),
      URLLC_FIELD("solver.waterfill_tol", "relative budget tolerance of the bisection", waterfill.tol),
      URLLC_FIELD("solver.waterfill_max_iter", "bisection iteration cap", waterfill.max_iter),
      URLLC_FIELD("policy.policies", "comma list of proposed, baseline1, baseline2, wsrm", policies),
      URLLC_FIELD("policy.static_v", "control parameter V of both baselines", static_v),
      URLLC_FIELD("output.traces", "write per-realization trace CSVs", traces),
  };
  return all;
}

#undef URLLC_FIELD

const Field& find_field(std::string_view key) {
  for (const auto& f : fields())
    if (f.key.name == key) return f;
  throw ConfigError(fmt::format("unknown config key '{}'", key));
}

// 1-based line of `key` under `[section]` (empty section = before any header), 0 if absent.
int locate_line(std::string_view text, std::string_view section, std::string_view key) {
  std::string_view current;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    const auto line = trim(text.substr(pos, end - pos));
    ++line_no;
    pos = end + 1;
    if (line.size() >= 2 && line.front() == '[' && line.back() == ']') {
      current = trim(line.substr(1, line.size() - 2));
    } else if (current == section && line.substr(0, key.size()) == key) {
      const auto rest = trim(line.substr(key.size()));
      if (!rest.empty() && rest.front() == '=') return line_no;
    }
  }
  return 0;
}

}  // namespace

void RunConfig::validate() const {
  scenario.validate();
  if (policies.empty()) throw ConfigError("policy.policies: at least one policy is required");
  for (const auto& p : policy_configs()) p.validate();
}

std::vector<PolicyConfig> RunConfig::policy_configs() const {
  std::vector<PolicyConfig> out;
  for (auto kind : policies) {
    PolicyConfig p;
    p.kind = kind;
    p.static_v = static_v;
    p.ccp = ccp;
    p.waterfill = waterfill;
    out.push_back(p);
  }
  return out;
}

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = [] {
    std::vector<ConfigKey> k;
    for (const auto& f : fields()) k.push_back(f.key);
    return k;
  }();
  return keys;
}

void set_config_value(RunConfig& cfg, std::string_view key, std::string_view value) {
  find_field(key).set(cfg, value);
}

std::vector<PolicyKind> parse_policy_list(std::string_view text) {
  std::vector<PolicyKind> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = std::min(text.find(',', start), text.size());
    const auto item = trim(text.substr(start, end - start));
    if (!item.empty()) {
      const auto kind = parse_policy(item);
      if (!kind) throw ArgumentError(fmt::format("unknown policy '{}'", item));
      out.push_back(*kind);
    }
    start = end + 1;
  }
  if (out.empty()) throw ArgumentError("empty policy list");
  return out;
}

RunConfig parse_config(std::string_view text, const std::string& origin) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(fmt::format("{}:{}: {}", origin, e.line(), e.message()));
  }
  RunConfig cfg;
  for (const auto& [section, body] : tree) {
    if (body.empty()) {
      // Key outside any section: accepted when already dotted.
      try {
        set_config_value(cfg, section, body.data());
      } catch (const ConfigError& e) {
        throw ConfigError(fmt::format("{}:{}: {}", origin, locate_line(text, "", section), e.what()));
      }
      continue;
    }
    for (const auto& [key, value] : body) {
      try {
        set_config_value(cfg, section + "." + key, value.data());
      } catch (const ConfigError& e) {
        throw ConfigError(fmt::format("{}:{}: {}", origin, locate_line(text, section, key), e.what()));
      }
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

void apply_overrides(RunConfig& cfg, const std::vector<std::string>& overrides) {
  for (const auto& item : overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError(fmt::format("override '{}' is not key=value", item));
    set_config_value(cfg, trim(std::string_view(item).substr(0, eq)),
                     trim(std::string_view(item).substr(eq + 1)));
  }
}

nlohmann::json config_to_json(const RunConfig& cfg) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& f : fields()) {
    const auto dot = f.key.name.find('.');
    out[f.key.name.substr(0, dot)][f.key.name.substr(dot + 1)] = f.get(cfg);
  }
  return out;
}

std::string config_to_ini(const RunConfig& cfg) {
  std::string out, section;
  for (const auto& f : fields()) {
    const auto dot = f.key.name.find('.');
    const auto sec = f.key.name.substr(0, dot);
    if (sec != section) {
      out += fmt::format("{}[{}]\n", section.empty() ? "" : "\n", sec);
      section = sec;
    }
    out += fmt::format("# {}\n{} = {}\n", f.key.help, f.key.name.substr(dot + 1), f.text(cfg));
  }
  return out;
}

}  // namespace urllc
