#ifndef SYMBELL_NUMERIC_HPP
#define SYMBELL_NUMERIC_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace symbell {

// Exact arithmetic used on the polytope side (vertices, facets, local
// bounds). Floating point is reserved for Frank-Wolfe iterates and
// cosine values.
using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline double to_double(const BigInt& x) { return x.convert_to<double>(); }
inline double to_double(const BigRat& x) { return x.convert_to<double>(); }

inline BigInt numerator(const BigRat& x) { return boost::multiprecision::numerator(x); }
inline BigInt denominator(const BigRat& x) { return boost::multiprecision::denominator(x); }

/// Thrown when an enumeration would exceed its configured budget.
/// The CLI maps this to exit code 3.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// -------------------------------------------------------------------------
// Small dense linear algebra over exact rationals. Sizes here are the
// reduced dimension D = ceil(m/2), so plain Gaussian elimination is ample.
// -------------------------------------------------------------------------

using RatMatrix = std::vector<std::vector<BigRat>>;

/// Rank of an r x c rational matrix (destroys a local copy).
int rational_rank(RatMatrix a);

/// Solves A x = b exactly. Throws std::domain_error if A is singular.
std::vector<BigRat> rational_solve(RatMatrix a, std::vector<BigRat> b);

/// Incremental exact rank tracker: feed rows one at a time, rank() tells
/// how many were independent so far.
class RankTracker {
 public:
  explicit RankTracker(int dim) : dim_(dim) {}

  /// Returns true if the row increased the rank (was independent).
  bool add_row(std::vector<BigRat> row);

  int rank() const { return static_cast<int>(basis_.size()); }
  int dim() const { return dim_; }

 private:
  int dim_;
  std::vector<std::vector<BigRat>> basis_;  // rows in echelon form
  std::vector<int> pivot_cols_;
};

/// Scales a rational vector to coprime integers (multiplies by the lcm of
/// denominators, divides by the gcd of numerators). Zero vectors throw.
std::vector<BigInt> primitive_integer_vector(const std::vector<BigRat>& v);

/// FNV-1a 64-bit hash, used for config hashes and the run cache key.
std::uint64_t fnv1a64(const std::string& data);

/// Lower-case hex rendering of a 64-bit value, fixed width 16.
std::string hex64(std::uint64_t v);

}  // namespace symbell

#endif  // SYMBELL_NUMERIC_HPP
