// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The urllc-sched Authors

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "urllc/config.hpp"
#include "urllc/harness.hpp"

namespace urllc::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,       // bad flags, bad config, unwritable output
  kExitNumerical = 2,   // solver failure during a run
  kExitValidation = 3,  // an oracle check missed its tolerance
};

// Deterministic part of aggregate.json: resolved config, seeds, metrics.
// Independent of --jobs, wall clock and host.
nlohmann::json document_body(const RunConfig& cfg, const MetricsAggregate& metrics);

// Entry point behind the `urllc` binary; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace urllc::cli
