// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The urllc-sched Authors

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace urllc {

// Invalid inputs: violated preconditions, bad configuration values.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Solver breakdown: singular systems, failed brackets, non-convergence.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IterationLimitError : public NumericalError {
 public:
  IterationLimitError(const std::string& what, std::vector<double> last_iterate, double residual,
                      int iterations)
      : NumericalError(what),
        last_iterate_(std::move(last_iterate)),
        residual_(residual),
        iterations_(iterations) {}

  const std::vector<double>& last_iterate() const { return last_iterate_; }
  double residual() const { return residual_; }
  int iterations() const { return iterations_; }

 private:
  std::vector<double> last_iterate_;
  double residual_;
  int iterations_;
};

}  // namespace urllc
