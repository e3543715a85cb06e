#ifndef SYMBELL_SYMCORR_HPP
#define SYMBELL_SYMCORR_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "symbell/numeric.hpp"
#include "symbell/scenario.hpp"

namespace symbell {

// Symmetry-adapted representation of correlation tensors. A symmetric
// tensor is determined by ceil(m/2) coefficients, one per class of the
// total input sum; entry j of a ReducedVec corresponds to tuples whose
// input sum is congruent to +-j modulo 2m (sign below).

/// Class of an index tuple: either a class id in [0, ceil(m/2)) with a
/// sign, or the identically-zero class (even m, remainder m/2).
struct IndexClass {
  int cls = -1;
  int sign = 0;  // 0 encodes the zero class

  bool is_zero() const { return sign == 0; }
};

template <typename T>
struct ReducedVec {
  ScenarioParams params;
  std::vector<T> e;  // size ceil(m/2)

  ReducedVec() = default;
  ReducedVec(ScenarioParams p, std::vector<T> entries) : params(p), e(std::move(entries)) {
    if (static_cast<int>(e.size()) != params.reduced_dim())
      throw std::invalid_argument("ReducedVec: wrong length");
  }

  static ReducedVec zero(ScenarioParams p) {
    return ReducedVec(p, std::vector<T>(static_cast<std::size_t>(p.reduced_dim()), T(0)));
  }

  bool operator==(const ReducedVec&) const = default;
};

using ReducedRat = ReducedVec<BigRat>;
using ReducedInt = ReducedVec<BigInt>;
using ReducedF64 = ReducedVec<double>;

/// 2m-periodic lift of a reduced vector: F[s+m] = -F[s], and the full
/// tensor entry at x equals F[(sum_n x_n) mod 2m].
template <typename T>
struct AntiperiodicProfile {
  int m = 0;
  std::vector<T> f;  // size 2m

  const T& operator[](int s) const { return f[static_cast<std::size_t>(s)]; }
};

/// Classifies an index tuple by the Euclidean division of its sum by m:
/// with s = sum, q = s / m, r = s % m, the entry equals
/// (-1)^q f_r for r < m/2 and (-1)^(q+1) f_(m-r) for r > m/2; for even m
/// and r = m/2 the entry is identically zero.
IndexClass class_of_index(std::span<const int> indices, const ScenarioParams& params);

/// Number of index tuples in [0,m)^N mapping to class j (either sign):
/// m^(N-1) for j = 0 and 2 m^(N-1) otherwise. The closed form is checked
/// once per process against a brute-force count on small scenarios.
BigInt class_weight(const ScenarioParams& params, int cls);

/// Per-class weight divided by m^(N-1); this is the scale-free weight
/// (1 for class 0, else 2) used by the Frank-Wolfe inner product.
double normalized_class_weight(const ScenarioParams& params, int cls);

/// Reduced coordinates of the GHZ correlation tensor under regular-polygon
/// measurements: entry j = cos(pi j / m). The cosines are irrational in
/// general, so only the floating variant exists; exact statements about
/// quantum values are carried as symbolic strings.
ReducedF64 ghz_reduced(const ScenarioParams& params);

/// cos(pi j / m) as an exact rational where one exists (j = 0, or 3j = m).
std::optional<BigRat> rational_cos(int cls, int m);

/// True when every stored class of the scenario has a rational cosine, so
/// quantum values and visibilities are exactly representable.
bool ghz_reduced_is_rational(const ScenarioParams& params);

/// Exact projection of a deterministic strategy tuple onto the invariant
/// subspace, computed via the Z_2m convolution of the parties' sign
/// profiles (the m^N tensor is never materialized).
ReducedRat project_strategy(std::span<const Strategy> strategies, const ScenarioParams& params);

/// Weighted inner products; these equal the Euclidean inner product of the
/// two symmetric full tensors.
BigRat weighted_dot(const ReducedRat& f, const ReducedRat& v);
BigRat weighted_dot(const ReducedInt& f, const ReducedRat& v);
double weighted_dot(const ReducedF64& f, const ReducedF64& v);

/// Full m^N tensor of a reduced vector, flat with the last index fastest.
/// Test oracle only; refuses to materialize more than `cap` entries.
std::vector<BigRat> expand_full(const ReducedRat& f, std::size_t cap = 10'000'000);

template <typename T>
AntiperiodicProfile<T> antiperiodic_profile(const ReducedVec<T>& f) {
  const int m = f.params.n_inputs;
  AntiperiodicProfile<T> out;
  out.m = m;
  out.f.assign(static_cast<std::size_t>(2 * m), T(0));
  for (int s = 0; s < m; ++s) {
    if (2 * s < m)
      out.f[static_cast<std::size_t>(s)] = f.e[static_cast<std::size_t>(s)];
    else if (2 * s > m)
      out.f[static_cast<std::size_t>(s)] = -f.e[static_cast<std::size_t>(m - s)];
    // 2s == m: zero class
    out.f[static_cast<std::size_t>(s + m)] = -out.f[static_cast<std::size_t>(s)];
  }
  return out;
}

/// Inverse of antiperiodic_profile (the first ceil(m/2) residues).
template <typename T>
ReducedVec<T> reduced_from_profile(const AntiperiodicProfile<T>& profile, const ScenarioParams& params) {
  if (profile.m != params.n_inputs)
    throw std::invalid_argument("reduced_from_profile: profile length mismatch");
  std::vector<T> e(static_cast<std::size_t>(params.reduced_dim()));
  for (std::size_t j = 0; j < e.size(); ++j) e[j] = profile.f[j];
  return ReducedVec<T>(params, std::move(e));
}

/// ReducedInt -> ReducedF64 (exact entries to doubles).
ReducedF64 to_f64(const ReducedInt& f);
ReducedF64 to_f64(const ReducedRat& f);

}  // namespace symbell

#endif  // SYMBELL_SYMCORR_HPP
