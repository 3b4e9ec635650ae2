#pragma once

#include <cmath>
#include <string>

#include "mmee/errors.hpp"

namespace mmee {

enum class PaFamily { TPA, ETPA };

enum class PilotOverheadMode { CurrentUsers, FixedMaxUsers };

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

/// All system-level scalars: link parameters, circuit-power constants and
/// the layout/sweep knobs shared by every pipeline stage.
struct SystemConfig {
  // Link
  double bandwidth_hz = 20e6;
  double coherence_time_s = 10e-3;
  double coherence_bw_hz = 180e3;
  double coherence_block = 1800.0;           // U = B_c * T_c
  double total_noise_w = dbm_to_watts(-96);  // B*sigma^2
  double downlink_power_w = 20.0;            // P_c, fixed
  PilotOverheadMode pilot_overhead_mode = PilotOverheadMode::CurrentUsers;
  int max_users = 300;  // pilot count in FixedMaxUsers mode

  // Circuit / baseband power
  double p_syn_w = 2.0;
  double p_bs_w = 1.0;
  double p_oth_w = 18.0;
  double p_cod_w_per_gbps = 0.1;
  double p_dec_w_per_gbps = 0.8;
  double l_bs_flops_per_w = 12.8e9;

  // Layout / grid
  double d_max_m = 500.0;
  double d_min_m = 35.0;
  int grid_size = 15000;
  unsigned long long seed = 1;

  // Sweeps / traffic
  int k_scan_max = 300;
  double blocking_target = 0.02;
  double sigma_t_bits = 1e6;  // per-session volume; only lambda*sigma/R_1 matters

  /// Joules per bit for the coding+decoding rate-proportional power term.
  double rate_coeff_j_per_bit() const {
    return (p_cod_w_per_gbps + p_dec_w_per_gbps) * 1e-9;
  }

  void validate() const {
    if (bandwidth_hz <= 0) throw config_error("bandwidth_hz must be positive");
    if (coherence_time_s <= 0) throw config_error("coherence_time_s must be positive");
    if (coherence_bw_hz <= 0) throw config_error("coherence_bw_hz must be positive");
    const double u = coherence_bw_hz * coherence_time_s;
    if (std::abs(coherence_block - u) > 1e-9 * u)
      throw config_error("coherence_block must equal coherence_bw_hz * coherence_time_s");
    if (total_noise_w <= 0) throw config_error("total_noise_w must be positive");
    if (downlink_power_w <= 0) throw config_error("downlink_power_w must be positive");
    if (p_syn_w <= 0 || p_bs_w <= 0 || p_oth_w <= 0)
      throw config_error("circuit powers must be positive");
    if (p_cod_w_per_gbps < 0 || p_dec_w_per_gbps < 0)
      throw config_error("coding powers must be nonnegative");
    if (l_bs_flops_per_w <= 0) throw config_error("l_bs_flops_per_w must be positive");
    if (!(0 < d_min_m && d_min_m < d_max_m))
      throw config_error("require 0 < d_min_m < d_max_m");
    if (grid_size < 1) throw config_error("grid_size must be >= 1");
    if (k_scan_max < 1) throw config_error("k_scan_max must be >= 1");
    if (!(blocking_target > 0 && blocking_target < 1))
      throw config_error("blocking_target must be in (0,1)");
    if (sigma_t_bits <= 0) throw config_error("sigma_t_bits must be positive");
    if (max_users < 1) throw config_error("max_users must be >= 1");
  }
};

/// One amplifier: family, maximum instantaneous output power, peak
/// efficiency and the ET-PA supply-tracking parameter.
struct PaSpec {
  PaFamily family = PaFamily::ETPA;
  double p_max_pa_w = 6.31;  // maximum output power
  double eta = 0.8;          // peak efficiency
  double alpha = 0.0082;     // ET-PA parameter
  double headroom_db = 8.0;  // PAPR backoff between mean and max output

  double headroom_factor() const { return std::pow(10.0, headroom_db / 10.0); }

  /// Largest mean per-antenna transmit power the amplifier supports.
  double max_mean_power() const { return p_max_pa_w / headroom_factor(); }

  /// Fewest antennas that can radiate total power p_c within the headroom.
  int min_active_antennas(double p_c) const {
    return static_cast<int>(std::ceil(p_c / max_mean_power() - 1e-12));
  }

  void validate() const {
    if (!(eta > 0 && eta <= 1)) throw config_error("eta must be in (0,1]");
    if (p_max_pa_w <= 0) throw config_error("p_max_pa_w must be positive");
    if (family == PaFamily::ETPA && alpha <= 0)
      throw config_error("alpha must be positive for ET-PA");
    if (headroom_db < 0) throw config_error("headroom_db must be nonnegative");
  }
};

inline std::string to_string(PaFamily f) { return f == PaFamily::TPA ? "tpa" : "etpa"; }

inline PaFamily pa_family_from_string(const std::string& s) {
  if (s == "tpa" || s == "TPA") return PaFamily::TPA;
  if (s == "etpa" || s == "ETPA" || s == "et-pa" || s == "ET-PA") return PaFamily::ETPA;
  throw config_error("unknown PA family: " + s);
}

}  // namespace mmee
