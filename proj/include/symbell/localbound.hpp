#ifndef SYMBELL_LOCALBOUND_HPP
#define SYMBELL_LOCALBOUND_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "symbell/convolve.hpp"
#include "symbell/necklaces.hpp"
#include "symbell/numeric.hpp"
#include "symbell/scenario.hpp"
#include "symbell/symcorr.hpp"

namespace symbell {

// Local bound L(f) = max over deterministic strategies of <f, d>. The
// last party is fixed by the sign rule once the other N-1 are chosen, and
// those N-1 can be restricted to necklace orbit representatives taken in
// non-decreasing order, which brings the enumeration down to
// C(u_m + N - 2, N - 1) cases, each contracted in the Z_2m group algebra.

struct BoundOptions {
  std::uint64_t multiset_budget = 1'000'000'000;
  int threads = 0;  // 0 = hardware concurrency
  bool collect_saturating = false;
  std::size_t max_saturating = 4096;
  bool g4_refinement = false;  // pruning only, off by default
  int necklace_cap = 26;
};

enum class BoundMode { kExact, kHeuristicLower };

struct BoundResult {
  BigInt bound = 0;
  /// Witness tuples attaining the bound; the first one is the canonical
  /// (lexicographically smallest) witness. With collect_saturating set,
  /// all distinct enumerated maximizers are kept (up to max_saturating),
  /// including sign choices left free by zeros in the last-party rule.
  std::vector<StrategyTuple> witnesses;
  BoundMode mode = BoundMode::kExact;
  std::uint64_t tuples_evaluated = 0;
};

/// True when the whole contraction fits comfortably in signed 64-bit
/// arithmetic (scores are bounded by m^N times the largest coefficient).
bool kernel_fits_int64(const ScenarioParams& params, const BigInt& max_abs_coeff);

/// Exact local bound of an integer-coefficient reduced functional.
/// Deterministic for any thread count. Throws BudgetExceeded when the
/// multiset enumeration would exceed options.multiset_budget.
BoundResult exact_local_bound(const ReducedInt& f, const BoundOptions& options = {});

/// Exact rational coefficients, handled by common-denominator scaling.
std::pair<BigRat, BoundResult> exact_local_bound_rational(const ReducedRat& f,
                                                          const BoundOptions& options = {});

/// Alternating-minimization lower bound: hold N-1 parties, update one by
/// the sign rule, cycle to a fixpoint; best over `restarts` seeded random
/// initializations. Never exceeds the exact bound. Reproducible from
/// (seed, restarts) independently of thread count.
BoundResult heuristic_local_bound(const ReducedInt& f, std::uint64_t seed, int restarts,
                                  const BoundOptions& options = {});

/// Bell value <f, d> of a complete strategy tuple, via convolution.
BigInt evaluate_bell_value(const ReducedInt& f, const StrategyTuple& tuple);

/// Number of multiset cases exact_local_bound would enumerate.
std::uint64_t exact_enumeration_count(const ScenarioParams& params);

}  // namespace symbell

#endif  // SYMBELL_LOCALBOUND_HPP
