#include <catch_amalgamated.hpp>

#include <cmath>

#include "mmee/link.hpp"

using namespace mmee;
using Catch::Approx;

TEST_CASE("sinr coefficient identities") {
  SystemConfig cfg;
  // Noise term equal to P_c with no interference: gamma = 1/K.
  CouplingStats cs{cfg.downlink_power_w / cfg.total_noise_w, 0.0};
  CHECK(sinr_coefficient(cfg, cs, 1) == Approx(1.0).epsilon(1e-12));
  CHECK(sinr_coefficient(cfg, cs, 7) == Approx(1.0 / 7.0).epsilon(1e-12));
  CHECK(sinr_coefficient(cfg, cs, 2) == Approx(0.5 * sinr_coefficient(cfg, cs, 1)).epsilon(1e-12));
  CHECK_THROWS_AS(sinr_coefficient(cfg, cs, 0), std::domain_error);
}

TEST_CASE("sinr coefficient regression at K=100") {
  SystemConfig cfg;
  const CouplingStats cs{11889865143444.629, 0.20559800268083531};
  CHECK(sinr_coefficient(cfg, cs, 100) == Approx(0.062652773005089868).epsilon(1e-12));
}

TEST_CASE("per-user rate algebraic identities") {
  SystemConfig cfg;
  // gamma*(M - K) = 1 -> log2 factor is exactly 1.
  const int k = 4, m = 6;
  const double gamma = 0.5;
  const double expected = (1.0 - double(k) / cfg.coherence_block) * cfg.bandwidth_hz;
  CHECK(per_user_rate(cfg, gamma, m, k) == Approx(expected).epsilon(1e-12));

  // Single ZF degree of freedom: M = K + 1.
  const double g2 = 0.37;
  CHECK(per_user_rate(cfg, g2, k + 1, k) ==
        Approx((1.0 - double(k) / cfg.coherence_block) * cfg.bandwidth_hz * std::log2(1.0 + g2))
            .epsilon(1e-12));
}

TEST_CASE("per-user rate regression, cross-checked externally") {
  SystemConfig cfg;
  const CouplingStats cs{11889865143444.629, 0.20559800268083531};
  const double gamma = sinr_coefficient(cfg, cs, 50);
  CHECK(gamma == Approx(0.12530554601017974).epsilon(1e-12));
  CHECK(per_user_rate(cfg, gamma, 100, 50) == Approx(55630902.902850345).epsilon(1e-12));
}

TEST_CASE("rate errors: ZF violation and pilot overflow") {
  SystemConfig cfg;
  CHECK_THROWS_AS(per_user_rate(cfg, 0.1, 50, 50), zf_violation);
  CHECK_THROWS_AS(per_user_rate(cfg, 0.1, 49, 50), zf_violation);
  CHECK_THROWS_AS(per_user_rate(cfg, 0.1, 3000, 1800), config_error);
}

TEST_CASE("rate is strictly increasing in antennas") {
  SystemConfig cfg;
  const CouplingStats cs{11889865143444.629, 0.20559800268083531};
  const int k = 40;
  const double gamma = sinr_coefficient(cfg, cs, k);
  double prev = 0.0;
  for (int m = k + 1; m <= 1000; ++m) {
    const double r = per_user_rate(cfg, gamma, m, k);
    CHECK(r > prev);
    prev = r;
  }
}

TEST_CASE("doubling M adds one pre-log unit for large arrays") {
  SystemConfig cfg;
  const CouplingStats cs{11889865143444.629, 0.20559800268083531};
  const int k = 40;
  const double gamma = sinr_coefficient(cfg, cs, k);
  const int m = 100000;
  const double delta = per_user_rate(cfg, gamma, 2 * m, k) - per_user_rate(cfg, gamma, m, k);
  const double prelog = (1.0 - double(k) / cfg.coherence_block) * cfg.bandwidth_hz;
  CHECK(delta == Approx(prelog).epsilon(0.01));
}

TEST_CASE("gamma*(M-K) invariant under joint power/noise scaling") {
  SystemConfig a;
  const CouplingStats cs{11889865143444.629, 0.20559800268083531};
  SystemConfig b = a;
  b.downlink_power_w *= 3.5;
  const CouplingStats cs_b{cs.lambda_cc * 3.5, cs.interference_sum * 3.5};
  const int k = 25, m = 60;
  CHECK(sinr_coefficient(a, cs, k) * (m - k) ==
        Approx(sinr_coefficient(b, cs_b, k) * (m - k)).epsilon(1e-12));
}

TEST_CASE("fixed-max-users pilot mode uses the configured maximum") {
  SystemConfig cfg;
  cfg.pilot_overhead_mode = PilotOverheadMode::FixedMaxUsers;
  cfg.max_users = 150;
  const double gamma = 0.2;
  const double expected =
      (1.0 - 150.0 / cfg.coherence_block) * cfg.bandwidth_hz * std::log2(1.0 + gamma * 10);
  CHECK(per_user_rate(cfg, gamma, 20, 10) == Approx(expected).epsilon(1e-12));
}
