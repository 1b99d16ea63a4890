// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The urllc-sched Authors

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "urllc/errors.hpp"
#include "urllc/latency_control.hpp"
#include "urllc/policies.hpp"
#include "urllc/power_alloc.hpp"
#include "urllc/scenario.hpp"

namespace urllc {

// Bad file, unknown key or unparsable value. Messages carry file:line and the
// dotted key where known.
class ConfigError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

// Everything a run needs besides --jobs and the output directory.
// Gbps and ms appear only here; ScenarioConfig converts to bits/slot.
struct RunConfig {
  ScenarioConfig scenario;
  std::vector<PolicyKind> policies{PolicyKind::Proposed, PolicyKind::Baseline1, PolicyKind::Baseline2,
                                   PolicyKind::Wsrm};
  double static_v = 100.0;
  CcpOptions ccp;
  WaterfillOptions waterfill;
  bool traces = false;

  void validate() const;
  std::vector<PolicyConfig> policy_configs() const;
};

struct ConfigKey {
  std::string name;  // section.key
  std::string help;
};

// Every settable key, in file order.
const std::vector<ConfigKey>& config_keys();

// Sets one dotted key from its text form. Throws ConfigError naming the key.
void set_config_value(RunConfig& cfg, std::string_view key, std::string_view value);

// INI text: [section] headers, key = value lines, '#' or ';' comments.
RunConfig parse_config(std::string_view text, const std::string& origin = "<config>");
RunConfig load_config(const std::string& path);

// Applies "section.key=value" overrides in order.
void apply_overrides(RunConfig& cfg, const std::vector<std::string>& overrides);

nlohmann::json config_to_json(const RunConfig& cfg);

// Round-trippable INI text of the fully resolved configuration.
std::string config_to_ini(const RunConfig& cfg);

std::vector<PolicyKind> parse_policy_list(std::string_view text);

}  // namespace urllc
