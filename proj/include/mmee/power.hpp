#pragma once

#include <cmath>

#include "mmee/config.hpp"
#include "mmee/errors.hpp"
#include "mmee/link.hpp"

namespace mmee {

/// Affine/sqrt decomposition of total power at fixed user count K:
///   P_tot(M) = c0 + c1*M + sqrt(c2*M) + rate_coeff*K*R(M).
/// Exact, not an approximation; the rate term stays separate because R
/// depends on M.
struct PowerCoeffs {
  double c0 = 0.0;          // watts
  double c1 = 0.0;          // watts per antenna
  double c2 = 0.0;          // watts^2 (TPA sqrt term), 0 for ET-PA
  double c1_star = 0.0;     // alpha/((1+alpha)*eta), dimensionless
  double rate_coeff = 0.0;  // joules per bit (coding + decoding)
};

/// PA input power to radiate mean output p. TPA follows a sqrt law;
/// ET-PA is affine in p.
inline double pa_input_power(const PaSpec& pa, double p, bool enforce_headroom = true) {
  if (p < 0) throw std::domain_error("pa_input_power: negative output power");
  if (enforce_headroom && p > pa.max_mean_power() * (1.0 + 1e-12))
    throw headroom_exceeded("pa_input_power: mean output above headroom limit");
  if (pa.family == PaFamily::TPA) return std::sqrt(p * pa.p_max_pa_w) / pa.eta;
  return (p + pa.alpha * pa.p_max_pa_w) / ((1.0 + pa.alpha) * pa.eta);
}

/// Array PA consumption with equal per-antenna power P_c/M.
inline double pa_array_power(const PaSpec& pa, double total_power_w, int antennas) {
  if (antennas < 1) throw std::domain_error("pa_array_power: antennas must be >= 1");
  const double per_antenna = total_power_w / antennas;
  if (per_antenna > pa.max_mean_power() * (1.0 + 1e-12))
    throw headroom_exceeded("pa_array_power: more antennas must be active for this PA");
  return antennas * pa_input_power(pa, per_antenna, false);
}

/// Baseband + circuit power: synthesizer, per-antenna chains, linear
/// processing, channel estimation and the rate-proportional coding term.
inline double baseband_power(const SystemConfig& cfg, int antennas, int users, double rate_bps) {
  if (antennas < 1 || users < 0 || rate_bps < 0)
    throw std::domain_error("baseband_power: invalid arguments");
  const double k = users;
  const double u = cfg.coherence_block;
  const double b_over_l = cfg.bandwidth_hz / cfg.l_bs_flops_per_w;
  // The K^3 and M*K^2 terms are ZF precoder computation, amortized over
  // the U symbols of a coherence block.
  const double c0 = cfg.p_syn_w + b_over_l / (3.0 * u) * k * k * k;
  const double c1 = cfg.p_bs_w + b_over_l * (2.0 + 1.0 / u) * k + 3.0 * b_over_l / u * k * k;
  return c0 + antennas * c1 + cfg.rate_coeff_j_per_bit() * k * rate_bps;
}

inline double total_power(const SystemConfig& cfg, const PaSpec& pa, int antennas, int users,
                          double rate_bps) {
  return pa_array_power(pa, cfg.downlink_power_w, antennas) +
         baseband_power(cfg, antennas, users, rate_bps) + cfg.p_oth_w;
}

/// EE = K*R / P_tot in bits per joule. K = 0 is the idle cell: zero.
inline double energy_efficiency(const SystemConfig& cfg, const PaSpec& pa,
                                const CouplingStats& coupling, int antennas, int users) {
  if (users == 0) return 0.0;
  const double gamma = sinr_coefficient(cfg, coupling, users);
  const double rate = per_user_rate(cfg, gamma, antennas, users);
  return users * rate / total_power(cfg, pa, antennas, users, rate);
}

/// Decompose total power for fixed K. Reproduces total_power exactly:
/// c0 + c1*M + sqrt(c2*M) + rate_coeff*K*R == total_power(M, K, R).
inline PowerCoeffs power_coeffs(const SystemConfig& cfg, const PaSpec& pa, int users) {
  if (users < 0) throw std::domain_error("power_coeffs: users must be >= 0");
  const double k = users;
  const double u = cfg.coherence_block;
  const double b_over_l = cfg.bandwidth_hz / cfg.l_bs_flops_per_w;
  PowerCoeffs pc;
  pc.c1_star = pa.alpha / ((1.0 + pa.alpha) * pa.eta);
  pc.rate_coeff = cfg.rate_coeff_j_per_bit();
  pc.c0 = cfg.p_syn_w + b_over_l / (3.0 * u) * k * k * k + cfg.p_oth_w;
  pc.c1 = cfg.p_bs_w + b_over_l * (2.0 + 1.0 / u) * k + 3.0 * b_over_l / u * k * k;
  if (pa.family == PaFamily::ETPA) {
    pc.c0 += cfg.downlink_power_w / ((1.0 + pa.alpha) * pa.eta);
    pc.c1 += pc.c1_star * pa.p_max_pa_w;
    pc.c2 = 0.0;
  } else {
    pc.c2 = cfg.downlink_power_w * pa.p_max_pa_w / (pa.eta * pa.eta);
  }
  return pc;
}

}  // namespace mmee
