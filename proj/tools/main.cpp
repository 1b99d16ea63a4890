// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The urllc-sched Authors

#include <iostream>
#include <string>
#include <vector>

#include "urllc/cli.hpp"

int main(int argc, char** argv) {
  return urllc::cli::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
