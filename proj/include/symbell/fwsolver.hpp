#ifndef SYMBELL_FWSOLVER_HPP
#define SYMBELL_FWSOLVER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symbell/localbound.hpp"
#include "symbell/numeric.hpp"
#include "symbell/scenario.hpp"
#include "symbell/symcorr.hpp"

namespace symbell {

// Active-set Frank-Wolfe over the symmetrised local polytope, minimizing
// (1/2)|x - v r|^2 in the weighted geometry, with visibility restarts that
// walk v down to the critical visibility and exact certification of the
// facet that stops it.

struct FWConfig {
  double gap_tolerance = 1e-10;
  long max_iterations = 1'000'000;

  enum class LmoMode { kExact, kHeuristic, kAuto };
  LmoMode lmo_mode = LmoMode::kAuto;
  int heuristic_restarts = 10;
  std::uint64_t seed = 1;
  /// AUTO uses the exact enumeration LMO from this many parties on (it is
  /// faster than alternating minimization there), or whenever the orbit
  /// count stays below exact_auto_budget.
  int exact_lmo_party_threshold = 8;
  std::uint64_t exact_auto_budget = 1'000'000;

  std::uint64_t multiset_budget = 1'000'000'000;
  int threads = 0;
  int max_rounds = 64;
  /// Relative overshoot applied to each restart visibility so the next
  /// target stays strictly outside the polytope.
  double overshoot = 1e-6;
  /// Fixed-point scale for integerizing float gradients before the exact
  /// LMO; only the finally extracted facet is certified, so LMO directions
  /// need no exactness.
  double gradient_scale = 1e12;
  /// Record the objective after every iteration (test diagnostics).
  bool record_history = false;

  void validate() const {
    if (gap_tolerance <= 0) throw std::invalid_argument("FWConfig: gap_tolerance must be positive");
    if (max_iterations < 1) throw std::invalid_argument("FWConfig: max_iterations must be positive");
    if (heuristic_restarts < 1) throw std::invalid_argument("FWConfig: need restarts >= 1");
  }
};

/// A symmetrised vertex in the active set: exact rational coordinates with
/// the witnessing strategies, float cache, and its convex weight.
struct ActiveAtom {
  ReducedRat vertex;
  StrategyTuple witness;
  std::vector<double> coords;
  double weight = 0.0;
};

ActiveAtom make_atom(const StrategyTuple& witness, const ScenarioParams& params);

struct FWMinimizeResult {
  std::vector<double> iterate;
  std::vector<ActiveAtom> active_set;  // includes zero-weight memory atoms
  double fw_gap = 0.0;
  double objective = 0.0;
  long iterations = 0;
  long lmo_calls = 0;
  bool gap_converged = false;
  std::vector<double> objective_history;  // filled when config.record_history
};

/// Linear minimization oracle: the symmetrised vertex minimizing
/// <gradient, .> in the weighted inner product, i.e. the local-bound
/// solver applied to the negated (integerized) gradient.
ActiveAtom lmo(const ReducedF64& gradient, const FWConfig& config);

/// Blended pairwise conditional gradients with exact quadratic line search
/// and lazified LMO calls. Minimizes (1/2)|x - target|^2 over the
/// symmetrised local polytope; warm_start atoms are kept as memory.
FWMinimizeResult fw_minimize(const ReducedF64& target, const FWConfig& config,
                             std::vector<ActiveAtom> warm_start = {});

/// Facet through D affinely independent exact vertices: solves
/// <f, v_i> = 1 exactly, scales to coprime integers, and orients the
/// result towards the GHZ tensor. Throws std::domain_error when singular.
ReducedInt extract_facet(const std::vector<ReducedRat>& vertices);

/// A Bell inequality in reduced coordinates with its certification data.
struct FacetCertificate {
  ScenarioParams params;
  ReducedInt coeffs;       // gcd-reduced, oriented so <coeffs, ghz> > 0
  BigInt local_bound = 0;  // exact when certified_exact, else best lower bound
  bool certified_exact = false;
  double quantum_value = 0.0;
  std::string quantum_expr;
  std::optional<BigRat> quantum_exact;
  double visibility = 0.0;
  std::optional<BigRat> visibility_exact;
  bool is_facet = false;
  std::vector<ReducedRat> saturating_vertices;  // affinely independent, at the bound
  std::vector<StrategyTuple> saturating_witnesses;
  /// Diagnostic for heuristic bounds: the all-minus strategy on the first
  /// N-1 parties reaches the reported value.
  bool trivial_strategy_saturates = false;
};

/// Certifies a reduced integer functional: exact local bound when the
/// orbit budget allows (else heuristic, flagged), quantum value, and the
/// facet test (exactly D affinely independent saturating vertices).
FacetCertificate certify(const ReducedInt& coeffs, const FWConfig& config = {});

/// Convex decomposition of v r over symmetrised vertices.
struct LocalModel {
  double visibility = 0.0;
  std::vector<ActiveAtom> atoms;  // positive weights, summing to 1
  double reconstruction_error = 0.0;
};

struct VisibilityResult {
  FacetCertificate certificate;
  LocalModel model;
  int rounds = 0;
  long lmo_calls = 0;
  bool converged = false;
  std::string status;
};

/// Full pipeline: start at v = 1, separate, restart at the hyperplane
/// crossing while keeping the active set, stop once D affinely independent
/// saturating vertices pin the facet, then certify it and attach the local
/// model of v r at the certified visibility.
VisibilityResult visibility_search(const ScenarioParams& params, const FWConfig& config = {});

}  // namespace symbell

#endif  // SYMBELL_FWSOLVER_HPP
