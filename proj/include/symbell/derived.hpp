#ifndef SYMBELL_DERIVED_HPP
#define SYMBELL_DERIVED_HPP

namespace symbell {

// Downstream quantities of a certified visibility.

struct EfficiencyResult {
  double eta_crit = 0.0;  // in (0, 1]
  double residual = 0.0;  // eta^N / v + (1-eta)^N - 1 at the root
};

/// Critical detection efficiency under the output-+1-on-no-click
/// convention: the unique root in (0,1) of h(eta) = eta^N / v +
/// (1-eta)^N - 1 away from the trivial root at 0 (h is convex with
/// h(0) = 0, h'(0) < 0, h(1) > 0). Requires 0 < v < 1.
EfficiencyResult critical_efficiency(double visibility, int n_parties);

/// Lower bound on the all-XY-measurement robustness from an m-gon value:
/// [cos(pi/(2m))]^N * v_m (the shrinking factor of the regular polygon).
double xy_lower_bound(double visibility, int n_inputs, int n_parties);

struct ActivationReport {
  double visibility = 0.0;   // v_m of the N-partite GHZ state
  int n_parties = 0;
  double v_low = 0.0;        // two-qubit isotropic nonlocality lower bound
  double threshold = 0.0;    // v_low^N
  bool activated = false;    // v_m < v_low^N
  double margin = 0.0;       // v_low^N - v_m
  bool asymptotic_check = false;  // (2/pi) 2^(1/N) < v_low
};

/// Star-network activation test: the swapped N-party state is effectively
/// a GHZ state with noise v^N, so nonlocality activates iff v_m < v_low^N.
ActivationReport activation_check(double visibility, int n_parties, double v_low = 0.6875);

}  // namespace symbell

#endif  // SYMBELL_DERIVED_HPP
