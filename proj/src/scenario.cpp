// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The urllc-sched Authors

#include "urllc/scenario.hpp"

#include <cmath>
#include <random>

#include "urllc/errors.hpp"

namespace urllc {

void ScenarioConfig::validate() const {
  if (n_antennas < 1) throw ArgumentError("scenario.n_antennas must be >= 1");
  if (ue_count < 1) throw ArgumentError("scenario.ue_count must be >= 1");
  if (ue_count > n_antennas) throw ArgumentError("scenario.ue_count must not exceed n_antennas");
  if (!(area_km > 0.0)) throw ArgumentError("scenario.area_km must be positive");
  if (!(min_distance_m >= 0.0) || min_distance_m >= 0.5 * area_km * 1000.0)
    throw ArgumentError("scenario.min_distance_m must be within the cell");
  if (!(bandwidth_hz > 0.0)) throw ArgumentError("scenario.bandwidth_hz must be positive");
  if (!(slot_ms > 0.0)) throw ArgumentError("scenario.slot_ms must be positive");
  if (!(alpha > 0.0)) throw ArgumentError("channel.alpha must be positive");
  if (horizon_slots < 0) throw ArgumentError("scenario.slots must be >= 0");
  if (realizations < 1) throw ArgumentError("scenario.realizations must be >= 1");
  if (!(warmup_fraction >= 0.0 && warmup_fraction < 1.0))
    throw ArgumentError("scenario.warmup_fraction must lie in [0, 1)");
  if (!(traffic.lambda_gbps >= 0.0)) throw ArgumentError("traffic.lambda_gbps must be >= 0");
  if (!(traffic.packet_bits > 0.0)) throw ArgumentError("traffic.packet_bits must be positive");
  if (!(traffic.arrival_cap_factor >= 1.0))
    throw ArgumentError("traffic.arrival_cap_factor must be >= 1");
  if (!(traffic.rate_min_factor > 0.0 && traffic.rate_min_factor <= traffic.rate_max_factor))
    throw ArgumentError("traffic rate factors must satisfy 0 < min <= max");
  if (!(traffic.csi_accuracy >= 0.0 && traffic.csi_accuracy <= 1.0))
    throw ArgumentError("traffic.csi_accuracy must lie in [0, 1]");
  if (!(ccdf_step_ms > 0.0 && ccdf_max_ms > 0.0))
    throw ArgumentError("scenario.ccdf_max_ms and scenario.ccdf_step_ms must be positive");
}

int ScenarioConfig::warmup_slots() const {
  return static_cast<int>(std::floor(warmup_fraction * horizon_slots));
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t realization, std::uint64_t stream) {
  return splitmix64(splitmix64(splitmix64(master) ^ realization) ^ (stream + 0x5851f42d4c957f2dULL));
}

Scenario generate_scenario(const ScenarioConfig& cfg, std::uint64_t realization_seed) {
  cfg.validate();
  std::mt19937_64 rng(realization_seed);
  const double half = 0.5 * cfg.area_km * 1000.0;
  std::uniform_real_distribution<double> coord(-half, half);

  Scenario sc;
  const double noise = noise_power_watts(cfg.noise, cfg.bandwidth_hz);
  const double lambda = cfg.gbps_to_bits_per_slot(cfg.traffic.lambda_gbps);
  const auto& tt = cfg.traffic;

  ChannelParams& ch = sc.cell.channel;
  ch.n_antennas = cfg.n_antennas;
  ch.regularization = cfg.alpha;
  ch.power_budget = dbm_to_watts(cfg.power_dbm);

  while (static_cast<int>(sc.profiles.size()) < cfg.ue_count) {
    const double x = coord(rng);
    const double y = coord(rng);
    const double d = std::hypot(x, y);
    if (d < cfg.min_distance_m || d <= 0.0) continue;
    UeProfile p;
    p.mean_arrival = lambda;
    p.arrival_cap = lambda > 0.0 ? tt.arrival_cap_factor * lambda : tt.packet_bits;
    p.delay_bound = cfg.delay_bound_slots();
    p.reliability_eps = tt.reliability_eps;
    p.rate_min = tt.rate_min_factor * lambda;
    p.rate_max = tt.rate_max_factor * lambda;
    p.weight = tt.weight;
    p.csi_accuracy = tt.csi_accuracy;
    p.distance = d;
    sc.profiles.push_back(p);
    sc.x_m.push_back(x);
    sc.y_m.push_back(y);
    ch.gains.push_back(pathloss_gain(d, cfg.pathloss) / noise);
    ch.csi_accuracy.push_back(tt.csi_accuracy);
  }
  sc.cell.omega = solve_omega(ch, cfg.omega_tol, cfg.omega_max_iter);
  sc.cell.bits_per_se = cfg.bits_per_se();
  return sc;
}

}  // namespace urllc
