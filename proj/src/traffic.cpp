// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The urllc-sched Authors

#include "urllc/traffic.hpp"

#include <algorithm>
#include <cmath>

#include "urllc/errors.hpp"
#include "urllc/simd/kernels.hpp"

namespace urllc {

void UeProfile::validate() const {
  if (!(mean_arrival >= 0.0)) throw ArgumentError("mean_arrival must be non-negative");
  if (!(arrival_cap > 0.0)) throw ArgumentError("arrival_cap must be positive");
  if (mean_arrival > arrival_cap) throw ArgumentError("mean_arrival must not exceed arrival_cap");
  if (!(delay_bound >= 1.0)) throw ArgumentError("delay_bound must be at least one slot");
  if (!(reliability_eps > 0.0 && reliability_eps < 1.0))
    throw ArgumentError("reliability_eps must lie in (0, 1)");
  // An idle UE (no traffic) may carry zero rate bounds.
  if (!(rate_min > 0.0) && !(mean_arrival == 0.0 && rate_min == 0.0))
    throw ArgumentError("rate_min must be positive");
  if (rate_min > rate_max) throw ArgumentError("rate_min must not exceed rate_max");
  if (!(weight >= 0.0)) throw ArgumentError("weight must be non-negative");
  if (!(csi_accuracy >= 0.0 && csi_accuracy <= 1.0))
    throw ArgumentError("csi_accuracy must lie in [0, 1]");
  if (!(distance > 0.0)) throw ArgumentError("distance must be positive");
}

double generate_arrival(const UeProfile& profile, double packet_bits, std::mt19937_64& rng) {
  if (!(packet_bits > 0.0)) throw ArgumentError("packet_bits must be positive");
  if (profile.mean_arrival <= 0.0) return 0.0;
  std::poisson_distribution<std::int64_t> packets(profile.mean_arrival / packet_bits);
  return std::min(packet_bits * static_cast<double>(packets(rng)), profile.arrival_cap);
}

double update_queue(double queue, double served, double arrival) {
  return std::max(queue - served, 0.0) + arrival;
}

double update_virtual_queue(double virtual_queue, double aux, double served) {
  return std::max(virtual_queue + aux - served, 0.0);
}

double delay_measure(double queue, double mean_arrival) {
  if (!(mean_arrival > 0.0)) throw ArgumentError("delay_measure needs a positive mean arrival");
  return queue / mean_arrival;
}

QueueBank::QueueBank(std::size_t ue_count)
    : queue_(ue_count, 0.0),
      virtual_queue_(ue_count, 0.0),
      served_cum_(ue_count, 0.0),
      aux_cum_(ue_count, 0.0) {}

UeDynamicState QueueBank::state(std::size_t ue) const {
  return {queue_.at(ue), virtual_queue_.at(ue), served_cum_.at(ue), aux_cum_.at(ue), slot_};
}

void QueueBank::advance(std::span<const double> arrivals, std::span<const double> served,
                        std::span<const double> aux) {
  if (arrivals.size() != size() || served.size() != size() || aux.size() != size())
    throw ArgumentError("QueueBank::advance: per-UE vector size mismatch");
  simd::lindley_step(queue_, served, arrivals);
  simd::virtual_queue_step(virtual_queue_, aux, served);
  for (std::size_t m = 0; m < size(); ++m) {
    served_cum_[m] += served[m];
    aux_cum_[m] += aux[m];
  }
  ++slot_;
}

}  // namespace urllc
