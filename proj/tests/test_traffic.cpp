#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <string>
#include <vector>

#include "mmee/traffic.hpp"

using namespace mmee;
using Catch::Approx;

namespace {

QueueInputs uniform_rate_queue(int m, double offered_load) {
  QueueInputs q;
  q.m = m;
  q.sigma_t_bits = 1.0;
  q.rates_bps.assign(m, 1.0);  // f == 1
  q.lambda_per_s = offered_load;
  return q;
}

// Independent full Erlang distribution: normalized recurrence w_n = w_{n-1}*a/n.
std::vector<double> erlang_distribution(int m, double a) {
  std::vector<double> w(m + 1);
  w[0] = 1.0;
  for (int n = 1; n <= m; ++n) {
    w[n] = w[n - 1] * a / n;
    // renormalize on the fly to dodge overflow
    if (w[n] > 1e100)
      for (auto& v : w) v /= 1e100;
  }
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& v : w) v /= total;
  return w;
}

std::string write_temp_profile(const std::vector<double>& loads) {
  const std::string path = "test_profile_tmp.txt";
  std::ofstream out(path);
  for (double v : loads) out << v << "\n";
  return path;
}

}  // namespace

TEST_CASE("two-server queue with unit offered load is Erlang 0.4/0.4/0.2") {
  const auto dist = queue_distribution(uniform_rate_queue(2, 1.0));
  REQUIRE(dist.pi.size() == 3);
  CHECK(dist.pi[0] == Approx(0.4).epsilon(1e-12));
  CHECK(dist.pi[1] == Approx(0.4).epsilon(1e-12));
  CHECK(dist.pi[2] == Approx(0.2).epsilon(1e-12));
}

TEST_CASE("state-dependent rates reweight the distribution") {
  // f(1)=1, f(2)=0.5 and unit ratio: unnormalized weights (1, 1, 1).
  QueueInputs q;
  q.m = 2;
  q.sigma_t_bits = 1.0;
  q.rates_bps = {1.0, 0.5};
  q.lambda_per_s = 1.0;
  const auto dist = queue_distribution(q);
  for (double p : dist.pi) CHECK(p == Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("zero arrivals concentrate on the empty state") {
  const auto dist = queue_distribution(uniform_rate_queue(5, 0.0));
  CHECK(dist.pi[0] == 1.0);
  for (int n = 1; n <= 5; ++n) CHECK(dist.pi[n] == 0.0);
}

TEST_CASE("Erlang-B recursion values") {
  CHECK(erlang_b(1, 1.0) == Approx(0.5).epsilon(1e-12));
  CHECK(erlang_b(2, 1.0) == Approx(0.2).epsilon(1e-12));
  CHECK(queue_distribution(uniform_rate_queue(10, 5.0)).blocking() ==
        Approx(erlang_b(10, 5.0)).margin(1e-10));
}

TEST_CASE("Erlang-B equivalence across m and offered load") {
  for (int m : {1, 10, 50, 200}) {
    for (double a : {0.1, 1.0, 10.0, 100.0, 300.0}) {
      const auto dist = queue_distribution(uniform_rate_queue(m, a));
      const auto oracle = erlang_distribution(m, a);
      double total = 0.0;
      for (int n = 0; n <= m; ++n) {
        CHECK(std::abs(dist.pi[n] - oracle[n]) <= 1e-10);
        total += dist.pi[n];
      }
      CHECK(std::abs(total - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("lambda solver inverts the Erlang example") {
  QueueInputs q = uniform_rate_queue(2, 0.0);
  const double lambda = solve_lambda_max(q, 0.2);
  CHECK(lambda * q.sigma_t_bits / q.rates_bps[0] == Approx(1.0).margin(2e-5));
  q.lambda_per_s = lambda;
  CHECK(queue_distribution(q).blocking() == Approx(0.2).margin(1e-6));

  // Tiny target -> tiny lambda.
  CHECK(solve_lambda_max(q, 1e-8) < 1e-3 * lambda);
}

TEST_CASE("blocking is monotone in lambda") {
  QueueInputs q = uniform_rate_queue(20, 0.0);
  double prev = -1.0;
  for (double a : {0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 40.0}) {
    q.lambda_per_s = a;
    const double b = queue_distribution(q).blocking();
    CHECK(b >= prev);
    prev = b;
  }
}

TEST_CASE("heavier load stochastically dominates") {
  QueueInputs q1 = uniform_rate_queue(30, 8.0);
  QueueInputs q2 = uniform_rate_queue(30, 16.0);
  const auto d1 = queue_distribution(q1);
  const auto d2 = queue_distribution(q2);
  double cdf1 = 0.0, cdf2 = 0.0;
  for (int n = 0; n <= 30; ++n) {
    cdf1 += d1.pi[n];
    cdf2 += d2.pi[n];
    CHECK(cdf1 >= cdf2 - 1e-12);
  }
}

TEST_CASE("profile files parse and validate") {
  std::vector<double> loads(24, 0.5);
  loads[20] = 1.0;
  const auto path = write_temp_profile(loads);
  const auto profile = load_profile(path);
  CHECK(profile.hourly_load[20] == 1.0);
  CHECK(profile.hourly_load[0] == 0.5);
  std::remove(path.c_str());

  std::vector<double> bad(24, 0.5);  // no peak hour
  const auto bad_path = write_temp_profile(bad);
  CHECK_THROWS_AS(load_profile(bad_path), config_error);
  std::remove(bad_path.c_str());

  const auto short_path = write_temp_profile({1.0, 0.5});
  CHECK_THROWS_AS(load_profile(short_path), config_error);
  std::remove(short_path.c_str());
}

TEST_CASE("hourly pipeline hits the blocking target at peak") {
  QueueInputs q = uniform_rate_queue(25, 0.0);
  const double lambda_max = solve_lambda_max(q, 0.02);
  DailyProfile profile;
  for (auto& v : profile.hourly_load) v = 0.3;
  profile.hourly_load[12] = 1.0;
  profile.hourly_load[3] = 0.01;
  const auto hours = hourly_distributions(profile, lambda_max, q);
  REQUIRE(hours.size() == 24);
  CHECK(hours[12].blocking() == Approx(0.02).margin(1e-6));
  // Low load concentrates near empty; half load dominates peak load.
  CHECK(hours[3].pi[0] > 0.5);
  double cdf_low = 0.0, cdf_peak = 0.0;
  for (int n = 0; n <= 25; ++n) {
    cdf_low += hours[0].pi[n];
    cdf_peak += hours[12].pi[n];
    CHECK(cdf_low >= cdf_peak - 1e-12);
  }
  for (const auto& h : hours) {
    const double total = std::accumulate(h.pi.begin(), h.pi.end(), 0.0);
    CHECK(std::abs(total - 1.0) <= 1e-12);
  }
}
