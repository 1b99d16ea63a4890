// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The urllc-sched Authors

#include <algorithm>
#include <random>

#include "doctest.h"

#include "support.hpp"
#include "urllc/errors.hpp"
#include "urllc/oracles.hpp"
#include "urllc/policies.hpp"

using namespace urllc;

namespace {

PolicyConfig policy(PolicyKind kind, double v = 100.0) {
  PolicyConfig p;
  p.kind = kind;
  p.static_v = v;
  return p;
}

// Bank whose virtual queues equal `y` after one slot with nothing served.
QueueBank bank_with_vqueues(const std::vector<double>& y) {
  QueueBank bank(y.size());
  const std::vector<double> zero(y.size(), 0.0);
  bank.advance(zero, zero, y);
  return bank;
}

}  // namespace

TEST_CASE("policy names round-trip") {
  for (auto k : {PolicyKind::Proposed, PolicyKind::Baseline1, PolicyKind::Baseline2, PolicyKind::Wsrm})
    CHECK(parse_policy(policy_name(k)) == k);
  CHECK_FALSE(parse_policy("greedy").has_value());
}

TEST_CASE("cold start with zero virtual queues allocates no power") {
  const auto cell = test::make_cell({1.0, 2.0, 3.0}, {0.1, 0.1, 0.1});
  const std::vector<UeProfile> profiles(3, test::make_profile(10.0));
  QueueBank bank(3);
  const auto d = decide_proposed(bank, profiles, cell, policy(PolicyKind::Proposed));
  for (std::size_t m = 0; m < 3; ++m) {
    CHECK(d.power[m] == 0.0);
    CHECK(d.rate_bits[m] == 0.0);
    CHECK(d.control[m] >= 1.0 * profiles[m].rate_min - 1e-12);  // pi * nu >= 1
    CHECK(d.aux[m] >= profiles[m].rate_min);
    CHECK(d.aux[m] <= profiles[m].rate_max);
  }
}

TEST_CASE("single UE with backlog gets the whole budget") {
  const auto cell = test::make_cell({1.0}, {0.0}, 8, 5.0);
  const std::vector<UeProfile> profiles{test::make_profile(10.0)};
  const auto bank = bank_with_vqueues({3.0});
  const auto d = decide_proposed(bank, profiles, cell, policy(PolicyKind::Proposed));
  CHECK(d.budget_used == doctest::Approx(5.0).epsilon(1e-8));
}

TEST_CASE("backlogged UE receives strictly more power and matches the grid") {
  const auto cell = test::make_cell({1.0, 1.0}, {0.1, 0.1}, 16, 4.0);
  const std::vector<UeProfile> profiles(2, test::make_profile(10.0));
  const auto bank = bank_with_vqueues({40.0, 2.0});
  const auto d = decide_proposed(bank, profiles, cell, policy(PolicyKind::Proposed));
  CHECK(d.power[0] > d.power[1]);
  const PowerProblem prob{{40.0, 2.0}, cell.rate_gains(), cell.budget_weights(), 4.0};
  const auto grid = oracles::waterfill_grid(prob, 1000);
  CHECK(weighted_rate_objective(prob, d.power) >= grid.objective - 1e-3 * grid.objective);
}

TEST_CASE("baseline 2 floor is r_min regardless of slot or backlog") {
  const auto cell = test::make_cell({1.0, 1.0}, {0.1, 0.1});
  const std::vector<UeProfile> profiles(2, test::make_profile(10.0, 10.0, 0.1));
  QueueBank bank(2);
  // Starve the UEs with aux below lambda so the latency floor clamps to r_max.
  for (int t = 0; t < 50; ++t) bank.advance(std::vector<double>{10.0, 10.0}, std::vector<double>{0.0, 0.0},
                                            std::vector<double>{5.0, 5.0});
  const auto b2 = decide_baseline(bank, profiles, cell, policy(PolicyKind::Baseline2, 1.0));
  const auto b1 = decide_baseline(bank, profiles, cell, policy(PolicyKind::Baseline1, 1.0));
  for (std::size_t m = 0; m < 2; ++m) {
    CHECK(b2.aux[m] == profiles[m].rate_min);
    CHECK(b1.aux[m] == profiles[m].rate_max);
    CHECK(b1.infeasible[m]);
  }
}

TEST_CASE("baseline interior closed form") {
  const auto cell = test::make_cell({1.0}, {0.0});
  UeProfile p = test::make_profile(1.0);
  p.rate_min = 1.0;
  p.rate_max = 3.0;
  p.arrival_cap = 4.0;
  const auto bank = bank_with_vqueues({1.0});
  const auto d = decide_baseline(bank, std::vector<UeProfile>{p}, cell, policy(PolicyKind::Baseline2, 2.0));
  CHECK(d.aux[0] == 2.0);
  CHECK(d.control[0] == 2.0);
}

TEST_CASE("wsrm examples") {
  const auto cell = test::make_cell({1.0, 1.0, 1.0}, {0.2, 0.2, 0.2}, 32, 6.0);
  std::vector<UeProfile> profiles(3, test::make_profile(10.0));
  SUBCASE("equal weights and channels split evenly") {
    const auto d = decide_wsrm(profiles, cell, policy(PolicyKind::Wsrm));
    CHECK(d.power[0] == doctest::Approx(d.power[1]));
    CHECK(d.power[1] == doctest::Approx(d.power[2]));
  }
  SUBCASE("weights equal to a Y snapshot reproduce the proposed power step") {
    const std::vector<double> y{5.0, 1.0, 3.0};
    for (std::size_t m = 0; m < 3; ++m) profiles[m].weight = y[m];
    const auto w = decide_wsrm(profiles, cell, policy(PolicyKind::Wsrm));
    for (auto& p : profiles) p.weight = 1.0;
    const auto d = decide_proposed(bank_with_vqueues(y), profiles, cell, policy(PolicyKind::Proposed));
    CHECK(w.power == d.power);
  }
  SUBCASE("zero weights allocate nothing") {
    for (auto& p : profiles) p.weight = 0.0;
    const auto d = decide_wsrm(profiles, cell, policy(PolicyKind::Wsrm));
    CHECK(d.power == std::vector<double>{0.0, 0.0, 0.0});
  }
}

TEST_CASE("every policy respects the budget and is deterministic") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto cell = test::make_cell({0.5, 1.0, 2.0, 4.0}, {0.1, 0.2, 0.3, 0.0}, 32, 3.0, 1e2);
  const std::vector<UeProfile> profiles(4, test::make_profile(10.0));
  for (int i = 0; i < 50; ++i) {
    std::vector<double> y(4);
    for (auto& v : y) v = 200.0 * u(rng);
    const auto bank = bank_with_vqueues(y);
    for (auto k : {PolicyKind::Proposed, PolicyKind::Baseline1, PolicyKind::Baseline2, PolicyKind::Wsrm}) {
      const auto a = decide(bank, profiles, cell, policy(k));
      const auto b = decide(bank, profiles, cell, policy(k));
      CHECK(a.budget_used <= 3.0 * (1 + 1e-6));
      CHECK(a.power == b.power);
      CHECK(a.aux == b.aux);
      CHECK(a.control == b.control);
    }
  }
}

TEST_CASE("clipped rates stay inside the floor and ceiling") {
  const auto cell = test::make_cell({1.0, 1.0}, {0.1, 0.1}, 16, 4.0, 10.0);
  const std::vector<UeProfile> profiles(2, test::make_profile(10.0));
  const auto d = decide_proposed(bank_with_vqueues({30.0, 1.0}), profiles, cell, policy(PolicyKind::Proposed));
  const auto clipped = d.clipped_rate_bits(profiles);
  for (std::size_t m = 0; m < 2; ++m) {
    CHECK(clipped[m] >= d.rate_floor[m]);
    CHECK(clipped[m] <= profiles[m].rate_max);
  }
}

TEST_CASE("shape mismatches and bad parameters are rejected") {
  const auto cell = test::make_cell({1.0, 1.0}, {0.1, 0.1});
  const std::vector<UeProfile> one{test::make_profile(10.0)};
  QueueBank bank(1);
  CHECK_THROWS_AS(decide_proposed(bank, one, cell, policy(PolicyKind::Proposed)), ArgumentError);
  const std::vector<UeProfile> two(2, test::make_profile(10.0));
  QueueBank bank2(2);
  CHECK_THROWS_AS(decide_baseline(bank2, two, cell, policy(PolicyKind::Baseline1, 0.0)), ArgumentError);
}
