#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "mmee/config.hpp"
#include "mmee/errors.hpp"
#include "mmee/lambert.hpp"
#include "mmee/power.hpp"

namespace mmee {

/// PA used when antenna count M is chosen: either the given fixed spec, or
/// a flexible one whose p_max_pa sits exactly headroom_db above the mean
/// per-antenna power P_c/M ("variable" curve).
inline PaSpec pa_for_antennas(const SystemConfig& cfg, const PaSpec& pa, bool variable_headroom,
                              int antennas) {
  if (!variable_headroom) return pa;
  PaSpec p = pa;
  p.p_max_pa_w = cfg.downlink_power_w / antennas * pa.headroom_factor();
  return p;
}

inline int min_feasible_antennas(const SystemConfig& cfg, const PaSpec& pa, bool variable_headroom,
                                 int users) {
  const int zf_floor = users + 1;
  if (variable_headroom) return std::max(zf_floor, 1);
  return std::max(zf_floor, pa.min_active_antennas(cfg.downlink_power_w));
}

/// Exhaustive EE maximization over feasible M in [max(K+1, min-active),
/// m_max]; ties go to the smaller M.
inline int optimal_antennas_search(const SystemConfig& cfg, const PaSpec& pa,
                                   const CouplingStats& coupling, int users, int m_max,
                                   bool variable_headroom = false) {
  const int lo = min_feasible_antennas(cfg, pa, variable_headroom, users);
  if (lo > m_max) throw infeasible("optimal_antennas_search: empty feasible antenna range");
  int best_m = lo;
  double best_ee = -1.0;
  for (int m = lo; m <= m_max; ++m) {
    const PaSpec p = pa_for_antennas(cfg, pa, variable_headroom, m);
    const double ee = energy_efficiency(cfg, p, coupling, m, users);
    if (ee > best_ee) {
      best_ee = ee;
      best_m = m;
    }
  }
  return best_m;
}

/// Closed-form ET-PA optimum via the Lambert W function, followed by
/// integer refinement of the true EE around the continuous maximizer.
/// The rate-proportional power term A*K*R scales EE monotonically at
/// fixed K, so it does not move the maximizer and stays out of the
/// closed-form coefficients.
inline int optimal_antennas_etpa(const SystemConfig& cfg, const PaSpec& pa,
                                 const CouplingStats& coupling, int users,
                                 bool variable_headroom = false) {
  if (users < 1) throw std::domain_error("optimal_antennas_etpa: users must be >= 1");
  const double gamma = sinr_coefficient(cfg, coupling, users);

  PowerCoeffs pc = power_coeffs(cfg, pa, users);
  if (variable_headroom) {
    // Flexible p_max_pa makes the array PA power M-independent:
    // P_PA = P_c*(1 + alpha*10^(h/10)) / ((1+alpha)*eta).
    pc = power_coeffs(cfg, PaSpec{PaFamily::ETPA, 1.0, pa.eta, pa.alpha, pa.headroom_db}, users);
    pc.c0 += cfg.downlink_power_w * pa.alpha * pa.headroom_factor() / ((1.0 + pa.alpha) * pa.eta);
    pc.c1 -= pc.c1_star * 1.0;  // drop the per-antenna PA part of the unit-p_max spec
  }

  constexpr double inv_e = 0.36787944117144232;
  const double one_minus_kg = 1.0 - users * gamma;
  double z = (gamma * pc.c0 - one_minus_kg * pc.c1) / (pc.c1 * std::exp(1.0));
  z = std::max(z, -inv_e);
  const double m_cont = (std::exp(lambert_w0(z) + 1.0) - one_minus_kg) / gamma;

  const int lo = min_feasible_antennas(cfg, pa, variable_headroom, users);
  const int fl = static_cast<int>(std::floor(m_cont));
  std::vector<int> candidates{fl - 1, fl, fl + 1, fl + 2, lo};
  int best_m = -1;
  double best_ee = -1.0;
  for (int m : candidates) {
    if (m < lo) continue;
    const PaSpec p = pa_for_antennas(cfg, pa, variable_headroom, m);
    const double ee = energy_efficiency(cfg, p, coupling, m, users);
    if (ee > best_ee || (ee == best_ee && m < best_m)) {
      best_ee = ee;
      best_m = m;
    }
  }
  return best_m;
}

inline int optimal_antennas(const SystemConfig& cfg, const PaSpec& pa,
                            const CouplingStats& coupling, int users, int m_max,
                            bool variable_headroom = false) {
  if (pa.family == PaFamily::ETPA)
    return optimal_antennas_etpa(cfg, pa, coupling, users, variable_headroom);
  return optimal_antennas_search(cfg, pa, coupling, users, m_max, variable_headroom);
}

struct EePoint {
  int users = 0;
  int antennas = 0;
  double ee = 0.0;  // bits/joule
};

struct GlobalOptimum {
  int m_gopt = 0;
  int k_gopt = 0;
  double ee = 0.0;
  std::vector<EePoint> curve;  // per-K optimum, K = 1..k_scan
};

/// Sweep K, optimize M per K, return the global (M_gOpt, K_gOpt) pair.
/// Requires the per-K EE curve to have decreased for 20 consecutive K
/// past the best point, otherwise the scan ceiling was too short.
inline GlobalOptimum global_optimum(const SystemConfig& cfg, const PaSpec& pa,
                                    const CouplingStats& coupling, int k_scan_max,
                                    bool variable_headroom = false, int m_max = 3000) {
  GlobalOptimum out;
  int decreasing = 0;
  double prev_ee = -1.0;
  for (int k = 1; k <= k_scan_max; ++k) {
    const int m = optimal_antennas(cfg, pa, coupling, k, m_max, variable_headroom);
    const PaSpec p = pa_for_antennas(cfg, pa, variable_headroom, m);
    const double ee = energy_efficiency(cfg, p, coupling, m, k);
    out.curve.push_back({k, m, ee});
    if (ee > out.ee) {
      out.ee = ee;
      out.m_gopt = m;
      out.k_gopt = k;
      decreasing = 0;
    } else if (ee < prev_ee) {
      ++decreasing;
      if (decreasing >= 20 && k > out.k_gopt + 20) break;
    }
    prev_ee = ee;
  }
  if (decreasing < 20)
    throw no_convergence("global_optimum: EE still rising at k_scan_max; increase the scan range");
  return out;
}

struct TableRow {
  int users = 0;
  int antennas = 0;
  double rate_bps = 0.0;
  double ee = 0.0;
  double total_power_w = 0.0;
};

/// Per-state operating points: for each user state n the EE-optimal
/// antenna count under the PA's minimum-active constraint, with the
/// resulting rate, EE and consumption. State 0 keeps the minimum active
/// antennas powered.
struct LoadAdaptiveTable {
  std::vector<TableRow> rows;  // index n = 0..m
  int m = 0;
  int m_gopt = 0;
  int k_gopt = 0;
};

inline LoadAdaptiveTable build_table(const SystemConfig& cfg, const PaSpec& pa,
                                     const CouplingStats& coupling, int m, int m_max = 3000) {
  if (m < 1) throw config_error("build_table: m must be >= 1");
  LoadAdaptiveTable table;
  table.m = m;
  const int idle_m = std::max(1, pa.min_active_antennas(cfg.downlink_power_w));
  table.rows.push_back({0, idle_m, 0.0, 0.0, total_power(cfg, pa, idle_m, 0, 0.0)});
  for (int n = 1; n <= m; ++n) {
    const int mn = optimal_antennas(cfg, pa, coupling, n, m_max);
    const double gamma = sinr_coefficient(cfg, coupling, n);
    const double rate = per_user_rate(cfg, gamma, mn, n);
    const double ptot = total_power(cfg, pa, mn, n, rate);
    table.rows.push_back({n, mn, rate, n * rate / ptot, ptot});
  }
  return table;
}

/// Upper-bound EE curve where the PA headroom follows the per-antenna
/// power: p_max_pa = (P_c/M) * 10^(headroom/10) for every evaluated M.
inline std::vector<EePoint> variable_headroom_curve(const SystemConfig& cfg, const PaSpec& pa,
                                                    const CouplingStats& coupling, int k_min,
                                                    int k_max, int m_max = 3000) {
  std::vector<EePoint> curve;
  for (int k = k_min; k <= k_max; ++k) {
    const int m = optimal_antennas(cfg, pa, coupling, k, m_max, true);
    const PaSpec p = pa_for_antennas(cfg, pa, true, m);
    curve.push_back({k, m, energy_efficiency(cfg, p, coupling, m, k)});
  }
  return curve;
}

}  // namespace mmee
