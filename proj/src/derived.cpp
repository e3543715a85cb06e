#include "symbell/derived.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace symbell {

EfficiencyResult critical_efficiency(double visibility, int n_parties) {
  if (!(visibility > 0.0 && visibility < 1.0))
    throw std::invalid_argument("critical_efficiency: need 0 < v < 1");
  if (n_parties < 2) throw std::invalid_argument("critical_efficiency: need N >= 2");

  const double v = visibility;
  const int n = n_parties;
  auto h = [&](double eta) { return std::pow(eta, n) / v + std::pow(1.0 - eta, n) - 1.0; };
  auto dh = [&](double eta) {
    return n * std::pow(eta, n - 1) / v - n * std::pow(1.0 - eta, n - 1);
  };

  // h is convex with h(0) = 0, h'(0) = -N < 0 and h(1) = 1/v - 1 > 0, so
  // the unique interior root lies right of the minimum of h. Bracket the
  // minimum by bisection on the increasing derivative, then bisect h.
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (dh(mid) < 0 ? lo : hi) = mid;
  }
  double root_lo = lo, root_hi = 1.0;
  for (int it = 0; it < 200 && root_hi - root_lo > 1e-16; ++it) {
    const double mid = 0.5 * (root_lo + root_hi);
    (h(mid) < 0 ? root_lo : root_hi) = mid;
  }
  double eta = 0.5 * (root_lo + root_hi);
  for (int it = 0; it < 4; ++it) {  // Newton polish
    const double d = dh(eta);
    if (d == 0) break;
    eta = std::clamp(eta - h(eta) / d, root_lo, root_hi);
  }
  return {eta, h(eta)};
}

double xy_lower_bound(double visibility, int n_inputs, int n_parties) {
  if (visibility <= 0 || n_inputs < 1 || n_parties < 1)
    throw std::invalid_argument("xy_lower_bound: inputs must be positive");
  return std::pow(std::cos(std::numbers::pi / (2.0 * n_inputs)), n_parties) * visibility;
}

ActivationReport activation_check(double visibility, int n_parties, double v_low) {
  if (!(visibility > 0.0 && visibility < 1.0) || !(v_low > 0.0 && v_low < 1.0))
    throw std::invalid_argument("activation_check: inputs must lie in (0, 1)");
  ActivationReport report;
  report.visibility = visibility;
  report.n_parties = n_parties;
  report.v_low = v_low;
  report.threshold = std::pow(v_low, n_parties);
  report.activated = visibility < report.threshold;
  report.margin = report.threshold - visibility;
  report.asymptotic_check =
      (2.0 / std::numbers::pi) * std::pow(2.0, 1.0 / n_parties) < v_low;
  return report;
}

}  // namespace symbell
