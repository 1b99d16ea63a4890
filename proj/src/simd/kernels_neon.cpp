// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The urllc-sched Authors

// AArch64 only (float64x2_t needs A64 NEON).

#include <arm_neon.h>

#include <algorithm>

#include "urllc/simd/kernels.hpp"

namespace urllc::simd {
namespace {

void lindley_step_neon(double* q, const double* served, const double* arrival, std::size_t n) {
  const float64x2_t zero = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t vq = vld1q_f64(q + i);
    vq = vaddq_f64(vmaxq_f64(vsubq_f64(vq, vld1q_f64(served + i)), zero), vld1q_f64(arrival + i));
    vst1q_f64(q + i, vq);
  }
  for (; i < n; ++i) q[i] = std::max(q[i] - served[i], 0.0) + arrival[i];
}

void virtual_queue_step_neon(double* y, const double* aux, const double* served, std::size_t n) {
  const float64x2_t zero = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t vy = vaddq_f64(vld1q_f64(y + i), vld1q_f64(aux + i));
    vy = vmaxq_f64(vsubq_f64(vy, vld1q_f64(served + i)), zero);
    vst1q_f64(y + i, vy);
  }
  for (; i < n; ++i) y[i] = std::max(y[i] + aux[i] - served[i], 0.0);
}

double ratio_sum_neon(const double* num, const double* den, double offset, std::size_t n) {
  const float64x2_t voff = vdupq_n_f64(offset);
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t vd = vaddq_f64(vld1q_f64(den + i), voff);
    acc = vaddq_f64(acc, vdivq_f64(vld1q_f64(num + i), vd));
  }
  double total = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (; i < n; ++i) total += num[i] / (den[i] + offset);
  return total;
}

double waterfill_usage_neon(const double* scaled_prio, const double* inv_gain, const double* cost,
                            double level, double* p, std::size_t n) {
  const float64x2_t zero = vdupq_n_f64(0.0);
  const float64x2_t vlevel = vdupq_n_f64(level);
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t vp = vsubq_f64(vmulq_f64(vlevel, vld1q_f64(scaled_prio + i)), vld1q_f64(inv_gain + i));
    vp = vmaxq_f64(vp, zero);
    vst1q_f64(p + i, vp);
    acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(cost + i), vp));
  }
  double used = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (; i < n; ++i) {
    p[i] = std::max(level * scaled_prio[i] - inv_gain[i], 0.0);
    used += cost[i] * p[i];
  }
  return used;
}

}  // namespace

const KernelTable& neon_table() {
  static const KernelTable table{Isa::Neon, lindley_step_neon, virtual_queue_step_neon,
                                 ratio_sum_neon, waterfill_usage_neon};
  return table;
}

}  // namespace urllc::simd
