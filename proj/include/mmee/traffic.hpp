#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "mmee/errors.hpp"

namespace mmee {

/// M/G/m/m state-dependent loss queue: m serving slots, per-session
/// volume sigma_t, state-dependent rates R_1..R_m and Poisson arrivals.
struct QueueInputs {
  int m = 1;
  double sigma_t_bits = 1e6;
  std::vector<double> rates_bps;  // R_1..R_m
  double lambda_per_s = 0.0;

  void validate() const {
    if (m < 1) throw config_error("QueueInputs: m must be >= 1");
    if (static_cast<int>(rates_bps.size()) != m)
      throw config_error("QueueInputs: need exactly m rates");
    for (double r : rates_bps)
      if (r <= 0) throw config_error("QueueInputs: rates must be positive");
    if (sigma_t_bits <= 0) throw config_error("QueueInputs: sigma_t must be positive");
    if (lambda_per_s < 0) throw config_error("QueueInputs: lambda must be >= 0");
  }
};

struct StateDistribution {
  std::vector<double> pi;  // pi[0..m]

  double blocking() const { return pi.back(); }
};

/// Limiting probabilities of the state-dependent loss queue, evaluated in
/// the log domain (log-sum-exp) so large m and offered loads stay finite.
inline StateDistribution queue_distribution(const QueueInputs& q) {
  q.validate();
  StateDistribution out;
  out.pi.assign(q.m + 1, 0.0);
  if (q.lambda_per_s == 0.0) {
    out.pi[0] = 1.0;
    return out;
  }
  const double log_a = std::log(q.lambda_per_s * q.sigma_t_bits / q.rates_bps[0]);
  std::vector<double> logw(q.m + 1, 0.0);
  double log_f_cum = 0.0;  // sum of ln f(i), f(i) = R_i/R_1
  double log_fact = 0.0;
  for (int n = 1; n <= q.m; ++n) {
    log_fact += std::log(static_cast<double>(n));
    log_f_cum += std::log(q.rates_bps[n - 1] / q.rates_bps[0]);
    logw[n] = n * log_a - log_fact - log_f_cum;
  }
  const double lmax = *std::max_element(logw.begin(), logw.end());
  double norm = 0.0;
  for (double lw : logw) norm += std::exp(lw - lmax);
  for (int n = 0; n <= q.m; ++n) out.pi[n] = std::exp(logw[n] - lmax) / norm;
  return out;
}

/// Classic Erlang-B recursion; the f == 1 reduction of the loss queue.
inline double erlang_b(int servers, double offered_load) {
  double b = 1.0;
  for (int n = 1; n <= servers; ++n) b = offered_load * b / (n + offered_load * b);
  return b;
}

/// Largest arrival rate meeting the blocking target: pi(m; lambda) is
/// increasing in lambda, so bracket expansion plus bisection converges.
inline double solve_lambda_max(const QueueInputs& q_template, double target_blocking,
                               double tol = 1e-6, int max_iter = 200) {
  if (!(target_blocking > 0 && target_blocking < 1))
    throw config_error("solve_lambda_max: target must be in (0,1)");
  QueueInputs q = q_template;
  auto blocking_at = [&](double lambda) {
    q.lambda_per_s = lambda;
    return queue_distribution(q).blocking();
  };
  double lo = 0.0;
  double hi = q.rates_bps[0] / q.sigma_t_bits;  // offered load 1 erlang
  int it = 0;
  while (blocking_at(hi) < target_blocking) {
    lo = hi;
    hi *= 2.0;
    if (++it > max_iter) throw no_convergence("solve_lambda_max: bracket expansion failed");
  }
  for (it = 0; it < max_iter; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double b = blocking_at(mid);
    if (std::abs(b - target_blocking) <= tol) return mid;
    (b < target_blocking ? lo : hi) = mid;
  }
  throw no_convergence("solve_lambda_max: bisection did not reach tolerance");
}

/// Normalized 24-hour load profile; peak hour is exactly 1.
struct DailyProfile {
  std::array<double, 24> hourly_load{};
  std::string name = "profile";

  void validate() const {
    double mx = 0.0;
    for (double v : hourly_load) {
      if (!(v > 0.0 && v <= 1.0))
        throw config_error("DailyProfile: loads must be in (0, 1]");
      mx = std::max(mx, v);
    }
    if (std::abs(mx - 1.0) > 1e-9)
      throw config_error("DailyProfile: peak hour load must equal 1.0");
  }
};

/// 24-line text file, one load fraction per line; '#' starts a comment.
inline DailyProfile load_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open profile file: " + path);
  DailyProfile profile;
  std::string line;
  int h = 0;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    double v;
    if (!(ss >> v)) continue;  // blank or comment-only line
    if (h >= 24)
      throw config_error(path + ": more than 24 load values (line " + std::to_string(lineno) + ")");
    profile.hourly_load[h++] = v;
  }
  if (h != 24) throw config_error(path + ": expected 24 load values, got " + std::to_string(h));
  auto slash = path.find_last_of("/\\");
  profile.name = slash == std::string::npos ? path : path.substr(slash + 1);
  if (auto dot = profile.name.find_last_of('.'); dot != std::string::npos)
    profile.name.erase(dot);
  profile.validate();
  return profile;
}

/// One state distribution per hour, lambda_h = load_h * lambda_max.
inline std::vector<StateDistribution> hourly_distributions(const DailyProfile& profile,
                                                           double lambda_max,
                                                           const QueueInputs& q_template) {
  profile.validate();
  std::vector<StateDistribution> out;
  out.reserve(24);
  QueueInputs q = q_template;
  for (double load : profile.hourly_load) {
    q.lambda_per_s = load * lambda_max;
    out.push_back(queue_distribution(q));
  }
  return out;
}

}  // namespace mmee
