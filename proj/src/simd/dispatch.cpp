// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The urllc-sched Authors

#include <cassert>
#include <cstdlib>
#include <string>

#include "urllc/simd/kernels.hpp"

namespace urllc::simd {

#if defined(URLLC_HAVE_AVX2)
const KernelTable& avx2_table();
#endif
#if defined(URLLC_HAVE_NEON)
const KernelTable& neon_table();
#endif

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

const KernelTable* avx2_kernels() {
#if defined(URLLC_HAVE_AVX2)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2")) return &avx2_table();
#endif
  return nullptr;
}

const KernelTable* neon_kernels() {
#if defined(URLLC_HAVE_NEON)
  return &neon_table();
#else
  return nullptr;
#endif
}

namespace {

const KernelTable& select() {
  const char* pinned = std::getenv("URLLC_ISA");
  const std::string want = pinned ? pinned : "";
  if (want == "scalar") return scalar_kernels();
  if (want.empty() || want == "avx2") {
    if (const auto* t = avx2_kernels()) return *t;
  }
  if (want.empty() || want == "neon") {
    if (const auto* t = neon_kernels()) return *t;
  }
  return scalar_kernels();
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

void lindley_step(std::span<double> q, std::span<const double> served,
                  std::span<const double> arrival) {
  assert(served.size() == q.size() && arrival.size() == q.size());
  active().lindley_step(q.data(), served.data(), arrival.data(), q.size());
}

void virtual_queue_step(std::span<double> y, std::span<const double> aux,
                        std::span<const double> served) {
  assert(aux.size() == y.size() && served.size() == y.size());
  active().virtual_queue_step(y.data(), aux.data(), served.data(), y.size());
}

double ratio_sum(std::span<const double> num, std::span<const double> den, double offset) {
  assert(num.size() == den.size());
  return active().ratio_sum(num.data(), den.data(), offset, num.size());
}

double waterfill_usage(std::span<const double> scaled_prio, std::span<const double> inv_gain,
                       std::span<const double> cost, double level, std::span<double> p) {
  assert(inv_gain.size() == scaled_prio.size() && cost.size() == scaled_prio.size() &&
         p.size() == scaled_prio.size());
  return active().waterfill_usage(scaled_prio.data(), inv_gain.data(), cost.data(), level,
                                  p.data(), p.size());
}

}  // namespace urllc::simd
