// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The urllc-sched Authors

#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Per-UE inner loops of the slot solver. Every kernel has a scalar reference
// and optional vector variants; the active table is chosen once at startup.
//
// Elementwise kernels (queue steps, water-filling powers) are bit-identical
// across variants. Reductions may differ in the last few ulps because the
// vector variants keep lane-wise partial sums.

namespace urllc::simd {

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa);

struct KernelTable {
  Isa isa;

  // q[i] = max(q[i] - served[i], 0) + arrival[i]
  void (*lindley_step)(double* q, const double* served, const double* arrival, std::size_t n);

  // y[i] = max(y[i] + aux[i] - served[i], 0)
  void (*virtual_queue_step)(double* y, const double* aux, const double* served, std::size_t n);

  // sum_i num[i] / (den[i] + offset)
  double (*ratio_sum)(const double* num, const double* den, double offset, std::size_t n);

  // p[i] = max(level * scaled_prio[i] - inv_gain[i], 0); returns sum_i cost[i] * p[i]
  double (*waterfill_usage)(const double* scaled_prio, const double* inv_gain, const double* cost,
                            double level, double* p, std::size_t n);
};

const KernelTable& scalar_kernels();

// nullptr when the variant was not compiled in or the CPU lacks support.
const KernelTable* avx2_kernels();
const KernelTable* neon_kernels();

// Best supported table. URLLC_ISA=scalar|avx2|neon in the environment pins
// the choice (falls back to scalar when the pinned ISA is unavailable).
const KernelTable& active();

// Span wrappers over the active table.
void lindley_step(std::span<double> q, std::span<const double> served,
                  std::span<const double> arrival);
void virtual_queue_step(std::span<double> y, std::span<const double> aux,
                        std::span<const double> served);
double ratio_sum(std::span<const double> num, std::span<const double> den, double offset);
double waterfill_usage(std::span<const double> scaled_prio, std::span<const double> inv_gain,
                       std::span<const double> cost, double level, std::span<double> p);

}  // namespace urllc::simd
