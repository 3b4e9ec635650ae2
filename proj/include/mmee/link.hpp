#pragma once

#include <cmath>

#include "mmee/config.hpp"
#include "mmee/errors.hpp"
#include "mmee/geometry.hpp"

namespace mmee {

/// gamma = (P_c/K_c) / (Lambda_cc * noise + interference), the per-user
/// SINR coefficient of the ZF downlink rate.
inline double sinr_coefficient(const SystemConfig& cfg, const CouplingStats& coupling, int users) {
  if (users < 1) throw std::domain_error("sinr_coefficient: users must be >= 1");
  const double denom = coupling.lambda_cc * cfg.total_noise_w + coupling.interference_sum;
  return (cfg.downlink_power_w / users) / denom;
}

inline int pilot_count(const SystemConfig& cfg, int users) {
  return cfg.pilot_overhead_mode == PilotOverheadMode::CurrentUsers ? users : cfg.max_users;
}

/// Average ZF rate per user, R = (1 - K_pilot/U) * B * log2(1 + gamma*(M-K)).
inline double per_user_rate(const SystemConfig& cfg, double gamma, int antennas, int users) {
  if (antennas <= users) throw zf_violation("per_user_rate: need antennas >= users + 1");
  const double k_pilot = pilot_count(cfg, users);
  if (k_pilot >= cfg.coherence_block)
    throw config_error("per_user_rate: pilot overhead exceeds coherence block");
  const double overhead = 1.0 - k_pilot / cfg.coherence_block;
  return overhead * cfg.bandwidth_hz * std::log2(1.0 + gamma * (antennas - users));
}

}  // namespace mmee
