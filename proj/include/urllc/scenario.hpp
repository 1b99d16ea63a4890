// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The urllc-sched Authors

#pragma once

#include <cstdint>
#include <vector>

#include "urllc/channel.hpp"
#include "urllc/policies.hpp"
#include "urllc/traffic.hpp"

namespace urllc {

// Per-UE traffic template. Config speaks Gbps and ms; everything is converted
// to bits/slot and slots when profiles are built.
struct TrafficTemplate {
  double lambda_gbps = 2.0;
  double delay_bound_ms = 10.0;
  double reliability_eps = 0.05;
  double rate_max_factor = 1.2;
  double rate_min_factor = 0.8;
  double arrival_cap_factor = 4.0;
  double packet_bits = 1e4;
  double csi_accuracy = 0.1;
  double weight = 1.0;
};

struct ScenarioConfig {
  int n_antennas = 32;
  double power_dbm = 38.0;
  double area_km = 0.5;  // side of the square cell, MBS at the centre
  int ue_count = 16;
  double min_distance_m = 35.0;
  double bandwidth_hz = 1e9;
  double slot_ms = 0.1;
  double alpha = 0.01;
  int horizon_slots = 1000;
  int realizations = 500;
  std::uint64_t seed = 1;
  double warmup_fraction = 0.1;
  TrafficTemplate traffic;
  PathLossConfig pathloss;
  NoiseConfig noise;
  double omega_tol = 1e-10;
  int omega_max_iter = 10000;
  double ccdf_max_ms = 50.0;
  double ccdf_step_ms = 0.1;

  void validate() const;

  double slot_seconds() const { return slot_ms * 1e-3; }
  double bits_per_se() const { return bandwidth_hz * slot_seconds(); }
  double gbps_to_bits_per_slot(double gbps) const { return gbps * 1e9 * slot_seconds(); }
  double delay_bound_slots() const { return traffic.delay_bound_ms / slot_ms; }
  int warmup_slots() const;
};

struct Scenario {
  std::vector<UeProfile> profiles;
  std::vector<double> x_m, y_m;  // UE positions relative to the MBS
  CellContext cell;
};

// UE i.i.d. uniform over the square, rejecting points closer than
// min_distance_m; Theta_m = g_m I with g_m = path-loss gain / noise power.
// Deterministic in realization_seed. Propagates omega solver errors.
Scenario generate_scenario(const ScenarioConfig& cfg, std::uint64_t realization_seed);

// Independent stream seeds derived from (master, realization, stream).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t realization, std::uint64_t stream);

}  // namespace urllc
