// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The urllc-sched Authors

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace urllc {

// Static per-UE parameters. Rates and arrivals are bits/slot, delay_bound is
// in slots.
struct UeProfile {
  double mean_arrival = 0.0;     // lambda
  double arrival_cap = 0.0;      // a_max
  double delay_bound = 1.0;      // d_th
  double reliability_eps = 0.05;
  double rate_min = 0.0;
  double rate_max = 0.0;
  double weight = 1.0;
  double csi_accuracy = 0.0;
  double distance = 1.0;         // metres

  void validate() const;
};

struct UeDynamicState {
  double queue = 0.0;
  double virtual_queue = 0.0;
  double served_cum = 0.0;  // sum of r over slots 1..t-1
  double aux_cum = 0.0;     // sum of phi over slots 1..t-1
  std::int64_t slot = 1;    // the slot about to be decided
};

// Poisson number of packets, capped at arrival_cap.
double generate_arrival(const UeProfile& profile, double packet_bits, std::mt19937_64& rng);

// Q(t+1) = [Q(t) - r(t)]^+ + a(t)
double update_queue(double queue, double served, double arrival);

// Y(t+1) = [Y(t) + phi(t) - r(t)]^+
double update_virtual_queue(double virtual_queue, double aux, double served);

// Little's-law delay Q / lambda in slots. Throws ArgumentError for lambda <= 0.
double delay_measure(double queue, double mean_arrival);

// Structure-of-arrays queue state for all UEs of one realization; the slot
// update runs through the vectorized kernels.
class QueueBank {
 public:
  explicit QueueBank(std::size_t ue_count);

  std::size_t size() const { return queue_.size(); }
  std::int64_t slot() const { return slot_; }

  std::span<const double> queues() const { return queue_; }
  std::span<const double> virtual_queues() const { return virtual_queue_; }
  std::span<const double> served_cum() const { return served_cum_; }
  std::span<const double> aux_cum() const { return aux_cum_; }

  UeDynamicState state(std::size_t ue) const;

  // Applies both recursions for one slot and advances the slot index.
  void advance(std::span<const double> arrivals, std::span<const double> served,
               std::span<const double> aux);

 private:
  std::vector<double> queue_;
  std::vector<double> virtual_queue_;
  std::vector<double> served_cum_;
  std::vector<double> aux_cum_;
  std::int64_t slot_ = 1;
};

}  // namespace urllc
