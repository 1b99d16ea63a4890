// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The urllc-sched Authors

#include <random>
#include <vector>

#include "doctest.h"

#include "urllc/simd/kernels.hpp"

using namespace urllc;

namespace {

std::vector<const simd::KernelTable*> vector_tables() {
  std::vector<const simd::KernelTable*> out;
  if (simd::avx2_kernels()) out.push_back(simd::avx2_kernels());
  if (simd::neon_kernels()) out.push_back(simd::neon_kernels());
  return out;
}

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

}  // namespace

TEST_CASE("scalar kernels follow their definitions") {
  std::vector<double> q{5.0, 2.0, 0.0}, served{3.0, 5.0, 0.0}, arr{2.0, 1.0, 0.0};
  simd::scalar_kernels().lindley_step(q.data(), served.data(), arr.data(), 3);
  CHECK(q == std::vector<double>{4.0, 1.0, 0.0});

  std::vector<double> y{1.0, 1.0}, aux{2.0, 0.0}, r{1.0, 5.0};
  simd::scalar_kernels().virtual_queue_step(y.data(), aux.data(), r.data(), 2);
  CHECK(y == std::vector<double>{2.0, 0.0});

  std::vector<double> num{1.0, 2.0}, den{1.0, 3.0};
  CHECK(simd::scalar_kernels().ratio_sum(num.data(), den.data(), 1.0, 2) == doctest::Approx(1.0));

  std::vector<double> prio{2.0, 0.5}, inv{1.0, 2.0}, cost{1.0, 3.0}, p(2);
  const double used = simd::scalar_kernels().waterfill_usage(prio.data(), inv.data(), cost.data(), 2.0,
                                                             p.data(), 2);
  CHECK(p[0] == 3.0);
  CHECK(p[1] == 0.0);
  CHECK(used == 3.0);
}

TEST_CASE("vector kernels match the scalar reference on ragged lengths") {
  const auto tables = vector_tables();
  if (tables.empty()) {
    MESSAGE("no vector kernels compiled for this target");
    return;
  }
  std::mt19937_64 rng(11);
  const auto& ref = simd::scalar_kernels();
  for (const auto* t : tables) {
    CAPTURE(simd::isa_name(t->isa));
    for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 33u, 100u}) {
      CAPTURE(n);
      auto q1 = random_vec(rng, n, 0.0, 10.0);
      auto q2 = q1;
      const auto s = random_vec(rng, n, 0.0, 10.0);
      const auto a = random_vec(rng, n, 0.0, 10.0);
      ref.lindley_step(q1.data(), s.data(), a.data(), n);
      t->lindley_step(q2.data(), s.data(), a.data(), n);
      CHECK(q1 == q2);

      auto y1 = random_vec(rng, n, 0.0, 10.0);
      auto y2 = y1;
      ref.virtual_queue_step(y1.data(), a.data(), s.data(), n);
      t->virtual_queue_step(y2.data(), a.data(), s.data(), n);
      CHECK(y1 == y2);

      const auto num = random_vec(rng, n, 0.0, 5.0);
      const auto den = random_vec(rng, n, 0.1, 2.0);
      CHECK(t->ratio_sum(num.data(), den.data(), 0.01, n) ==
            doctest::Approx(ref.ratio_sum(num.data(), den.data(), 0.01, n)).epsilon(1e-13));

      const auto inv = random_vec(rng, n, 1.0, 3.0);
      const auto cost = random_vec(rng, n, 0.1, 1.0);
      std::vector<double> p1(n), p2(n);
      const double u1 = ref.waterfill_usage(num.data(), inv.data(), cost.data(), 1.5, p1.data(), n);
      const double u2 = t->waterfill_usage(num.data(), inv.data(), cost.data(), 1.5, p2.data(), n);
      CHECK(p1 == p2);
      CHECK(u2 == doctest::Approx(u1).epsilon(1e-13));
    }
  }
}

TEST_CASE("active table is one of the compiled tables") {
  const auto& a = simd::active();
  const bool known = &a == &simd::scalar_kernels() || &a == simd::avx2_kernels() || &a == simd::neon_kernels();
  CHECK(known);
  CHECK_FALSE(simd::isa_name(a.isa).empty());
}
