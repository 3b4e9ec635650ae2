#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "mmee/config.hpp"
#include "mmee/errors.hpp"
#include "mmee/optimizer.hpp"
#include "mmee/traffic.hpp"

namespace mmee {

struct PaCandidate {
  double p_max_pa_w = 0.0;
  int min_active_antennas = 0;
  double weighted_ee = 0.0;
};

struct DimensioningReport {
  std::vector<PaCandidate> candidates;
  double best_p_max_pa_w = 0.0;
  double best_weighted_ee = 0.0;
  int m_gopt = 0;   // from the variable-headroom global optimum
  int k_gopt = 0;   // queue size m used for every candidate
  double baseline_weighted_ee = 0.0;  // fixed M = M_gOpt, filled by baseline_comparison
  double gain_percent = 0.0;
};

/// The discrete p_max_pa candidates: one per possible minimum-active
/// antenna count M = 1..M_gOpt, p_max = (P_c/M)*10^(headroom/10).
/// Descending in p_max by construction.
inline std::vector<double> candidate_pmax_values(const SystemConfig& cfg, const PaSpec& pa,
                                                 int m_gopt) {
  if (m_gopt < 1) throw config_error("candidate_pmax_values: m_gopt must be >= 1");
  std::vector<double> out;
  out.reserve(m_gopt);
  for (int m = 1; m <= m_gopt; ++m)
    out.push_back(cfg.downlink_power_w / m * pa.headroom_factor());
  return out;
}

struct WeightedEeResult {
  double weighted_ee = 0.0;
  double lambda_max = 0.0;
  LoadAdaptiveTable table;
  std::vector<StateDistribution> hourly;
};

/// Day-weighted EE of a table: re-solve lambda_max at the blocking
/// target for this table's rates, form the 24 hourly distributions and
/// average EE(n) under them with 1/24 hour weights.
inline WeightedEeResult weighted_ee_of_table(const SystemConfig& cfg,
                                             const LoadAdaptiveTable& table,
                                             const DailyProfile& profile) {
  QueueInputs q;
  q.m = table.m;
  q.sigma_t_bits = cfg.sigma_t_bits;
  q.rates_bps.reserve(table.m);
  for (int n = 1; n <= table.m; ++n) q.rates_bps.push_back(table.rows[n].rate_bps);

  WeightedEeResult res;
  res.table = table;
  res.lambda_max = solve_lambda_max(q, cfg.blocking_target);
  res.hourly = hourly_distributions(profile, res.lambda_max, q);
  double acc = 0.0;
  for (const auto& dist : res.hourly)
    for (int n = 1; n <= table.m; ++n) acc += dist.pi[n] * table.rows[n].ee;
  res.weighted_ee = acc / 24.0;
  return res;
}

/// Full per-candidate pipeline: adaptive table under the candidate's
/// minimum-active constraint, blocking-targeted lambda_max, hourly
/// distributions, day-weighted EE.
inline WeightedEeResult weighted_ee(const SystemConfig& cfg, const PaSpec& pa_candidate,
                                    const CouplingStats& coupling, const DailyProfile& profile,
                                    int m, int m_max = 3000) {
  return weighted_ee_of_table(cfg, build_table(cfg, pa_candidate, coupling, m, m_max), profile);
}

/// Enumerate the candidate p_max_pa values, evaluate the day-weighted EE
/// objective for each and pick the maximizer (ties toward smaller p_max).
inline DimensioningReport dimension_pa(const SystemConfig& cfg, const PaSpec& pa_proto,
                                       const CouplingStats& coupling, const DailyProfile& profile,
                                       const GlobalOptimum& variable_opt, int m_max = 3000) {
  DimensioningReport report;
  report.m_gopt = variable_opt.m_gopt;
  report.k_gopt = variable_opt.k_gopt;
  const auto pmax_values = candidate_pmax_values(cfg, pa_proto, variable_opt.m_gopt);
  for (double pmax : pmax_values) {
    PaSpec pa = pa_proto;
    pa.p_max_pa_w = pmax;
    const auto res = weighted_ee(cfg, pa, coupling, profile, variable_opt.k_gopt, m_max);
    report.candidates.push_back(
        {pmax, pa.min_active_antennas(cfg.downlink_power_w), res.weighted_ee});
  }
  report.best_weighted_ee = -1.0;
  for (const auto& c : report.candidates) {
    if (c.weighted_ee > report.best_weighted_ee ||
        (c.weighted_ee == report.best_weighted_ee && c.p_max_pa_w < report.best_p_max_pa_w)) {
      report.best_weighted_ee = c.weighted_ee;
      report.best_p_max_pa_w = c.p_max_pa_w;
    }
  }
  return report;
}

/// Baseline table: always run M_gOpt antennas regardless of state.
inline LoadAdaptiveTable build_fixed_table(const SystemConfig& cfg, const PaSpec& pa,
                                           const CouplingStats& coupling, int m, int m_fixed) {
  if (m_fixed < m + 1)
    throw infeasible("build_fixed_table: fixed antenna count violates ZF at full load");
  LoadAdaptiveTable table;
  table.m = m;
  table.rows.push_back({0, m_fixed, 0.0, 0.0, total_power(cfg, pa, m_fixed, 0, 0.0)});
  for (int n = 1; n <= m; ++n) {
    const double gamma = sinr_coefficient(cfg, coupling, n);
    const double rate = per_user_rate(cfg, gamma, m_fixed, n);
    const double ptot = total_power(cfg, pa, m_fixed, n, rate);
    table.rows.push_back({n, m_fixed, rate, n * rate / ptot, ptot});
  }
  return table;
}

struct BaselineComparison {
  double adaptive_weighted_ee = 0.0;
  double fixed_weighted_ee = 0.0;
  double gain_percent = 0.0;
  LoadAdaptiveTable adaptive_table;
  LoadAdaptiveTable fixed_table;
};

/// Adaptive system with the dimensioned PA vs the always-M_gOpt baseline,
/// both run through the same queue pipeline.
inline BaselineComparison baseline_comparison(const SystemConfig& cfg, const PaSpec& pa_best,
                                              const CouplingStats& coupling,
                                              const DailyProfile& profile, int m, int m_gopt,
                                              int m_max = 3000) {
  BaselineComparison cmp;
  cmp.adaptive_table = build_table(cfg, pa_best, coupling, m, m_max);
  cmp.fixed_table = build_fixed_table(cfg, pa_best, coupling, m, m_gopt);
  cmp.adaptive_weighted_ee = weighted_ee_of_table(cfg, cmp.adaptive_table, profile).weighted_ee;
  cmp.fixed_weighted_ee = weighted_ee_of_table(cfg, cmp.fixed_table, profile).weighted_ee;
  cmp.gain_percent =
      100.0 * (cmp.adaptive_weighted_ee - cmp.fixed_weighted_ee) / cmp.fixed_weighted_ee;
  return cmp;
}

}  // namespace mmee
