#pragma once

// Peak power policy, per-user receiver SNR and D-TDMA user selection for a
// single fading state. Noise power is normalized to one.

#include <cstddef>
#include <span>
#include <vector>

#include "mid/model.hpp"

namespace mid {

struct ScheduleDecision {
  std::size_t selected_user = 0;
  double realized_snr = 0.0;
  std::vector<double> per_user_snr;
};

/// Largest transmit power meeting both the budget `cap` and the interference
/// limit at PR-Rx: min(cap, Gamma / g). A zero gain leaves only the budget.
inline double max_transmit_power(double cap, double gamma_limit, double g) {
  if (g <= 0.0) {
    return cap;
  }
  const double limited = gamma_limit / g;
  return limited < cap ? limited : cap;
}

/// Receiver SNR h * p / (1 + Q * e). Every SNR in the library goes through
/// this expression so the materialized and streaming paths agree bit for bit.
inline double receiver_snr(double h, double power, double pr_power, double e) {
  return h * power / (1.0 + pr_power * e);
}

std::vector<double> per_user_snr(const FadingState& state, const NetworkConfig& config);

/// Argmax with the lowest index winning ties. Throws StructuralError on an
/// empty sequence.
ScheduleDecision select_user(std::span<const double> snrs);

double realized_snr(const FadingState& state, const NetworkConfig& config);

}  // namespace mid
