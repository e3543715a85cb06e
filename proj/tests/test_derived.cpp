#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "symbell/derived.hpp"

using namespace symbell;

TEST_CASE("critical efficiency reproduces the published thresholds") {
  auto a = critical_efficiency(0.35355, 4);
  CHECK(a.eta_crit == doctest::Approx(0.7706).epsilon(7e-4));
  CHECK(std::fabs(a.residual) <= 1e-12);

  auto b = critical_efficiency(0.32500, 4);
  CHECK(b.eta_crit == doctest::Approx(0.7544).epsilon(7e-4));
  CHECK(std::fabs(b.residual) <= 1e-12);
}

TEST_CASE("critical efficiency boundary behavior and errors") {
  CHECK(critical_efficiency(0.999999, 3).eta_crit > 0.999);
  CHECK_THROWS_AS((void)critical_efficiency(1.0, 4), std::invalid_argument);
  CHECK_THROWS_AS((void)critical_efficiency(0.0, 4), std::invalid_argument);
  CHECK_THROWS_AS((void)critical_efficiency(0.5, 1), std::invalid_argument);
}

TEST_CASE("the root is unique past the initial descent and residuals are tiny") {
  for (int n = 2; n <= 20; ++n) {
    for (double v : {0.05, 0.2, 0.5, 0.8, 0.95}) {
      auto res = critical_efficiency(v, n);
      CHECK(res.eta_crit > 0.0);
      CHECK(res.eta_crit < 1.0);
      CHECK(std::fabs(res.residual) <= 1e-12);
      // h changes sign exactly once on a fine grid right of the minimum
      auto h = [&](double eta) {
        return std::pow(eta, n) / v + std::pow(1.0 - eta, n) - 1.0;
      };
      int crossings = 0;
      double prev = h(1e-9);
      for (int k = 1; k <= 2000; ++k) {
        const double eta = static_cast<double>(k) / 2000.0;
        const double cur = h(eta);
        if (prev < 0 && cur >= 0) ++crossings;
        prev = cur;
      }
      CHECK(crossings == 1);
    }
  }
}

TEST_CASE("efficiency threshold improves with better inequalities") {
  for (int n : {3, 4, 6, 10}) {
    double last = 1.0;
    for (double v : {0.8, 0.6, 0.4, 0.2, 0.1}) {
      const double eta = critical_efficiency(v, n).eta_crit;
      CHECK(eta < last);
      last = eta;
    }
  }
}

TEST_CASE("xy lower bound values and monotonicity") {
  CHECK(xy_lower_bound(0.49132, 224, 3) == doctest::Approx(0.49129).epsilon(1e-4));
  CHECK(xy_lower_bound(0.32384, 128, 4) == doctest::Approx(0.32374).epsilon(1.6e-4));

  double prev = 0.0;
  for (int m : {2, 4, 8, 16, 64, 256, 4096}) {
    const double bound = xy_lower_bound(0.5, m, 5);
    CHECK(bound > prev);
    CHECK(bound <= 0.5);
    prev = bound;
  }
  CHECK(xy_lower_bound(0.5, 1 << 20, 5) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK_THROWS_AS((void)xy_lower_bound(-0.1, 4, 3), std::invalid_argument);
}

TEST_CASE("activation in star networks") {
  auto on = activation_check(0.02301, 10, 0.6875);
  CHECK(on.activated);
  CHECK(on.asymptotic_check);
  CHECK(on.threshold == doctest::Approx(std::pow(0.6875, 10)));
  CHECK(on.margin > 0);

  auto on2 = activation_check(0.02332, 10, 0.6875);
  CHECK(on2.activated);

  auto off = activation_check(0.03521, 9, 0.6875);
  CHECK_FALSE(off.activated);
  CHECK(off.margin < 0);

  // (2/pi) 2^(1/9) = 0.68789... > 0.6875, so N = 9 fails the asymptotic test
  CHECK_FALSE(activation_check(0.03521, 9, 0.6875).asymptotic_check);

  CHECK_THROWS_AS((void)activation_check(1.5, 10, 0.6875), std::invalid_argument);
}
