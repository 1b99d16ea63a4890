// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The urllc-sched Authors

#include <algorithm>

#include "urllc/simd/kernels.hpp"

namespace urllc::simd {
namespace {

void lindley_step_scalar(double* q, const double* served, const double* arrival, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) q[i] = std::max(q[i] - served[i], 0.0) + arrival[i];
}

void virtual_queue_step_scalar(double* y, const double* aux, const double* served, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = std::max(y[i] + aux[i] - served[i], 0.0);
}

double ratio_sum_scalar(const double* num, const double* den, double offset, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += num[i] / (den[i] + offset);
  return acc;
}

double waterfill_usage_scalar(const double* scaled_prio, const double* inv_gain, const double* cost,
                              double level, double* p, std::size_t n) {
  double used = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    p[i] = std::max(level * scaled_prio[i] - inv_gain[i], 0.0);
    used += cost[i] * p[i];
  }
  return used;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{Isa::Scalar, lindley_step_scalar, virtual_queue_step_scalar,
                                 ratio_sum_scalar, waterfill_usage_scalar};
  return table;
}

}  // namespace urllc::simd
