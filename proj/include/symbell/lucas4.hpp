#ifndef SYMBELL_LUCAS4_HPP
#define SYMBELL_LUCAS4_HPP

#include <array>
#include <string>
#include <vector>

#include "symbell/numeric.hpp"

namespace symbell::lucas4 {

// Closed-form machinery for m = 4, where only two strategy orbits exist
// and the local bounds of [1,0,0,0] (odd N) and [0,1,0,-1] (even N) form a
// Lucas-type sequence.

/// 4x4 exact integer matrix.
using Mat4 = std::array<std::array<BigInt, 4>, 4>;

Mat4 mat_r();  // circulant sum of the all-plus orbit profile
Mat4 mat_s();  // circulant sum of the (+,+,-,+) orbit profile
Mat4 mat_mul(const Mat4& a, const Mat4& b);

/// Induced 1-norm: maximum column absolute sum.
BigInt induced_one_norm(const Mat4& m);

/// L_{i,j} = |R^i S^j|_1, the Bell value of [1,0,0,0] on i+j+1 parties
/// when i of them play the all-plus orbit and j the other orbit.
BigInt lij(int i, int j);

/// Exact scalar of the form (a + b sqrt2) / 2^k, closed under ring
/// operations, with k kept minimal.
class RootTwoScalar {
 public:
  RootTwoScalar() = default;
  RootTwoScalar(BigInt a, BigInt b, int k = 0) : a_(std::move(a)), b_(std::move(b)), k_(k) {
    normalize();
  }
  static RootTwoScalar integer(BigInt a) { return RootTwoScalar(std::move(a), 0, 0); }
  static RootTwoScalar sqrt2() { return RootTwoScalar(0, 1, 0); }

  const BigInt& a() const { return a_; }
  const BigInt& b() const { return b_; }
  int k() const { return k_; }

  RootTwoScalar operator+(const RootTwoScalar& o) const;
  RootTwoScalar operator-(const RootTwoScalar& o) const;
  RootTwoScalar operator*(const RootTwoScalar& o) const;

  /// Conjugate a + b sqrt2 -> a - b sqrt2.
  RootTwoScalar conjugate() const { return RootTwoScalar(a_, -b_, k_); }

  bool is_integer() const { return b_ == 0 && k_ == 0; }
  /// Exact integer value; throws if not an integer.
  BigInt to_integer() const;

  double to_double() const;
  std::string to_string() const;

  bool operator==(const RootTwoScalar& o) const {
    return a_ == o.a_ && b_ == o.b_ && k_ == o.k_;
  }

 private:
  void normalize();

  BigInt a_ = 0, b_ = 0;
  int k_ = 0;
};

/// l_n = (1 + 1/sqrt2)^n - (1 - 1/sqrt2)^n, exact.
RootTwoScalar lucas_l(int n);

/// Local bound L_N^(4): seeded per parity from exact two-orbit values,
/// advanced with L_{N+4} = 8 (L_{N+2} - L_N), and cross-checked against
/// the closed form 4^(n-1) l_n / sqrt2 (odd N = 2n-1) and 4^n l_n / sqrt2
/// (even N = 2n).
BigInt local_bound_m4(int n_parties);

struct VisibilityM4 {
  std::string exact;  // e.g. "56/256" or "32/(64*sqrt(2))"
  double value = 0.0;
};

/// v = L_N^(4) / Q_N^(4), with Q = 4^(N-1) for odd N and 4^(N-1) sqrt2
/// for even N.
VisibilityM4 visibility_m4(int n_parties);

struct AntidiagonalReport {
  int n_max = 0;
  bool ok = false;
  std::vector<std::string> violations;
};

/// Verifies, for all i + j + 1 <= n_max: L_{i+2,j+2} = 8 L_{i,j},
/// L_{i,j+4} = 8 (L_{i,j+2} - L_{i,j}), and that each antidiagonal attains
/// its maximum at the edges (i = N-1 or j = N-1).
AntidiagonalReport antidiagonal_check(int n_max = 40);

}  // namespace symbell::lucas4

#endif  // SYMBELL_LUCAS4_HPP
