// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The urllc-sched Authors

// Compiled with -mavx2 only; selected at runtime after a cpuid check.

#include <immintrin.h>

#include <algorithm>

#include "urllc/simd/kernels.hpp"

namespace urllc::simd {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

void lindley_step_avx2(double* q, const double* served, const double* arrival, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vq = _mm256_loadu_pd(q + i);
    __m256d vs = _mm256_loadu_pd(served + i);
    __m256d va = _mm256_loadu_pd(arrival + i);
    vq = _mm256_add_pd(_mm256_max_pd(_mm256_sub_pd(vq, vs), zero), va);
    _mm256_storeu_pd(q + i, vq);
  }
  for (; i < n; ++i) q[i] = std::max(q[i] - served[i], 0.0) + arrival[i];
}

void virtual_queue_step_avx2(double* y, const double* aux, const double* served, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    __m256d vx = _mm256_loadu_pd(aux + i);
    __m256d vs = _mm256_loadu_pd(served + i);
    vy = _mm256_max_pd(_mm256_sub_pd(_mm256_add_pd(vy, vx), vs), zero);
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] = std::max(y[i] + aux[i] - served[i], 0.0);
}

double ratio_sum_avx2(const double* num, const double* den, double offset, std::size_t n) {
  const __m256d voff = _mm256_set1_pd(offset);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vn = _mm256_loadu_pd(num + i);
    __m256d vd = _mm256_add_pd(_mm256_loadu_pd(den + i), voff);
    acc = _mm256_add_pd(acc, _mm256_div_pd(vn, vd));
  }
  double total = hsum(acc);
  for (; i < n; ++i) total += num[i] / (den[i] + offset);
  return total;
}

double waterfill_usage_avx2(const double* scaled_prio, const double* inv_gain, const double* cost,
                            double level, double* p, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d vlevel = _mm256_set1_pd(level);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vp = _mm256_sub_pd(_mm256_mul_pd(vlevel, _mm256_loadu_pd(scaled_prio + i)),
                               _mm256_loadu_pd(inv_gain + i));
    vp = _mm256_max_pd(vp, zero);
    _mm256_storeu_pd(p + i, vp);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(cost + i), vp));
  }
  double used = hsum(acc);
  for (; i < n; ++i) {
    p[i] = std::max(level * scaled_prio[i] - inv_gain[i], 0.0);
    used += cost[i] * p[i];
  }
  return used;
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{Isa::Avx2, lindley_step_avx2, virtual_queue_step_avx2,
                                 ratio_sum_avx2, waterfill_usage_avx2};
  return table;
}

}  // namespace urllc::simd
