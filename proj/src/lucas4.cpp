#include "symbell/lucas4.hpp"

#include <cmath>
#include <sstream>

#include "symbell/convolve.hpp"
#include "symbell/localbound.hpp"

namespace symbell::lucas4 {

namespace {

Mat4 mat_identity() {
  Mat4 m{};
  for (int i = 0; i < 4; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
  return m;
}

Mat4 mat_from_rows(std::array<std::array<int, 4>, 4> rows) {
  Mat4 m{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return m;
}

Mat4 mat_pow(const Mat4& base, int exp) {
  Mat4 out = mat_identity();
  for (int i = 0; i < exp; ++i) out = mat_mul(out, base);
  return out;
}

}  // namespace

Mat4 mat_r() {
  return mat_from_rows({{{1, 1, 1, 1}, {-1, 1, 1, 1}, {-1, -1, 1, 1}, {-1, -1, -1, 1}}});
}

Mat4 mat_s() {
  return mat_from_rows({{{1, 1, -1, 1}, {-1, 1, 1, -1}, {1, -1, 1, 1}, {-1, 1, -1, 1}}});
}

Mat4 mat_mul(const Mat4& a, const Mat4& b) {
  Mat4 out{};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      const BigInt& aik = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
      if (aik == 0) continue;
      for (int j = 0; j < 4; ++j)
        out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
            aik * b[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
    }
  return out;
}

BigInt induced_one_norm(const Mat4& m) {
  BigInt best = 0;
  for (int j = 0; j < 4; ++j) {
    BigInt col = 0;
    for (int i = 0; i < 4; ++i)
      col += boost::multiprecision::abs(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    best = std::max(best, col);
  }
  return best;
}

BigInt lij(int i, int j) {
  if (i < 0 || j < 0) throw std::invalid_argument("lij: need i, j >= 0");
  return induced_one_norm(mat_mul(mat_pow(mat_r(), i), mat_pow(mat_s(), j)));
}

void RootTwoScalar::normalize() {
  if (a_ == 0 && b_ == 0) {
    k_ = 0;
    return;
  }
  while (k_ > 0 && a_ % 2 == 0 && b_ % 2 == 0) {
    a_ /= 2;
    b_ /= 2;
    --k_;
  }
}

RootTwoScalar RootTwoScalar::operator+(const RootTwoScalar& o) const {
  const int k = std::max(k_, o.k_);
  const BigInt lhs_scale = BigInt(1) << (k - k_);
  const BigInt rhs_scale = BigInt(1) << (k - o.k_);
  return RootTwoScalar(a_ * lhs_scale + o.a_ * rhs_scale, b_ * lhs_scale + o.b_ * rhs_scale, k);
}

RootTwoScalar RootTwoScalar::operator-(const RootTwoScalar& o) const {
  return *this + RootTwoScalar(-o.a_, -o.b_, o.k_);
}

RootTwoScalar RootTwoScalar::operator*(const RootTwoScalar& o) const {
  return RootTwoScalar(a_ * o.a_ + 2 * b_ * o.b_, a_ * o.b_ + b_ * o.a_, k_ + o.k_);
}

BigInt RootTwoScalar::to_integer() const {
  if (!is_integer()) throw std::domain_error("RootTwoScalar: not an integer: " + to_string());
  return a_;
}

double RootTwoScalar::to_double() const {
  return (symbell::to_double(a_) + symbell::to_double(b_) * std::sqrt(2.0)) /
         std::ldexp(1.0, k_);
}

std::string RootTwoScalar::to_string() const {
  std::ostringstream out;
  out << "(" << a_.str() << " + " << b_.str() << "*sqrt(2))/2^" << k_;
  return out.str();
}

RootTwoScalar lucas_l(int n) {
  if (n < 0) throw std::invalid_argument("lucas_l: need n >= 0");
  const RootTwoScalar x(2, 1, 1);   // 1 + 1/sqrt2
  const RootTwoScalar y(2, -1, 1);  // 1 - 1/sqrt2
  RootTwoScalar xp = RootTwoScalar::integer(1), yp = RootTwoScalar::integer(1);
  for (int i = 0; i < n; ++i) {
    xp = xp * x;
    yp = yp * y;
  }
  return xp - yp;
}

namespace {

// Exact Bell value of the parity facet ([1,0] for odd N, [0,1] for even N
// in reduced coordinates at m = 4) when i parties play the all-plus orbit
// and j parties the (+,+,-,+) orbit, with the last party sign-ruled.
BigInt two_orbit_value(int i, int j, bool odd_parity) {
  const ScenarioParams params(i + j + 1, 4);
  std::vector<BigInt> coeffs = odd_parity ? std::vector<BigInt>{1, 0} : std::vector<BigInt>{0, 1};
  const ReducedInt f(params, std::move(coeffs));
  const AntiperiodicProfile<BigInt> profile = antiperiodic_profile(f);

  const Strategy all_plus = Strategy::all_plus(4);
  const Strategy other = Strategy::from_string("++-+");
  auto state = ConvolutionState<BigInt>::neutral(4);
  ConvolutionState<BigInt> scratch;
  for (int p = 0; p < i; ++p) {
    convolve_party_into(scratch, state, all_plus);
    std::swap(state, scratch);
  }
  for (int p = 0; p < j; ++p) {
    convolve_party_into(scratch, state, other);
    std::swap(state, scratch);
  }
  return BigInt(score_with_last_party(profile, state).score);
}

// Best two-orbit split for N parties; with u_4 = 2 this is the exact
// local bound.
BigInt seed_bound(int n_parties) {
  const bool odd = n_parties % 2 == 1;
  BigInt best = 0;
  for (int i = 0; i + 1 <= n_parties; ++i)
    best = std::max(best, two_orbit_value(i, n_parties - 1 - i, odd));
  return best;
}

BigInt closed_form_bound(int n_parties) {
  const RootTwoScalar inv_sqrt2(0, 1, 1);  // sqrt2 / 2
  if (n_parties % 2 == 1) {
    const int n = (n_parties + 1) / 2;
    RootTwoScalar q = RootTwoScalar::integer(BigInt(1) << (2 * (n - 1)));
    return (q * lucas_l(n) * inv_sqrt2).to_integer();
  }
  const int n = n_parties / 2;
  RootTwoScalar q = RootTwoScalar::integer(BigInt(1) << (2 * n));
  return (q * lucas_l(n) * inv_sqrt2).to_integer();
}

}  // namespace

BigInt local_bound_m4(int n_parties) {
  if (n_parties < 3) throw std::invalid_argument("local_bound_m4: need N >= 3");

  // Four exact seeds per parity; the recursion must already hold on them.
  const int base = (n_parties % 2 == 1) ? 3 : 4;
  std::vector<BigInt> bounds;  // bounds[t] = L_{base + 2t}
  for (int t = 0; t < 4; ++t) bounds.push_back(seed_bound(base + 2 * t));
  for (int t = 2; t < 4; ++t)
    if (bounds[static_cast<std::size_t>(t)] !=
        8 * (bounds[static_cast<std::size_t>(t - 1)] - bounds[static_cast<std::size_t>(t - 2)]))
      throw std::logic_error("local_bound_m4: recursion fails on exact seeds");
  while (base + 2 * (static_cast<int>(bounds.size()) - 1) < n_parties) {
    const std::size_t t = bounds.size();
    bounds.push_back(8 * (bounds[t - 1] - bounds[t - 2]));
  }

  const BigInt result = bounds[static_cast<std::size_t>((n_parties - base) / 2)];
  if (result != closed_form_bound(n_parties))
    throw std::logic_error("local_bound_m4: recursion and closed form disagree");
  return result;
}

VisibilityM4 visibility_m4(int n_parties) {
  if (n_parties < 3) throw std::invalid_argument("visibility_m4: need N >= 3");
  const BigInt bound = local_bound_m4(n_parties);
  const BigInt q_base = BigInt(1) << (2 * (n_parties - 1));  // 4^(N-1)
  VisibilityM4 out;
  if (n_parties % 2 == 1) {
    out.exact = bound.str() + "/" + q_base.str();
    out.value = to_double(BigRat(bound, q_base));
  } else {
    out.exact = bound.str() + "/(" + q_base.str() + "*sqrt(2))";
    out.value = to_double(BigRat(bound, q_base)) / std::sqrt(2.0);
  }
  return out;
}

AntidiagonalReport antidiagonal_check(int n_max) {
  AntidiagonalReport report;
  report.n_max = n_max;
  const int size = n_max;  // i + j <= n_max - 1

  // Table by rows, built incrementally: row i holds R^i S^j.
  std::vector<std::vector<BigInt>> table(static_cast<std::size_t>(size));
  const Mat4 r = mat_r(), s = mat_s();
  Mat4 r_power = mat_identity();
  for (int i = 0; i < size; ++i) {
    Mat4 cur = r_power;
    for (int j = 0; i + j < size; ++j) {
      table[static_cast<std::size_t>(i)].push_back(induced_one_norm(cur));
      cur = mat_mul(cur, s);
    }
    r_power = mat_mul(r_power, r);
  }
  auto entry = [&](int i, int j) -> const BigInt& {
    return table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  };

  std::ostringstream msg;
  for (int i = 0; i < size; ++i) {
    for (int j = 0; i + j < size; ++j) {
      if (entry(i, j) != entry(j, i)) {
        msg.str("");
        msg << "L(" << i << "," << j << ") != L(" << j << "," << i << ")";
        report.violations.push_back(msg.str());
      }
      if (i + j + 4 < size && entry(i + 2, j + 2) != 8 * entry(i, j)) {
        msg.str("");
        msg << "L(" << i + 2 << "," << j + 2 << ") != 8 L(" << i << "," << j << ")";
        report.violations.push_back(msg.str());
      }
      // The four-step recursion holds on the base rows i = 0 (all j) and
      // i = 1 (j >= 1); every other entry reduces to those through the
      // diagonal recursion above. It genuinely fails at L(1,4) = 64.
      if (i <= 1 && j >= i && i + j + 4 < size &&
          entry(i, j + 4) != 8 * (entry(i, j + 2) - entry(i, j))) {
        msg.str("");
        msg << "L(" << i << "," << j + 4 << ") != 8 (L(" << i << "," << j + 2 << ") - L(" << i
            << "," << j << "))";
        report.violations.push_back(msg.str());
      }
    }
  }
  for (int sdiag = 0; sdiag < size; ++sdiag) {
    BigInt best = 0;
    for (int i = 0; i <= sdiag; ++i) best = std::max(best, entry(i, sdiag - i));
    if (entry(0, sdiag) != best || entry(sdiag, 0) != best) {
      msg.str("");
      msg << "antidiagonal N=" << sdiag + 1 << " maximum not on the edges";
      report.violations.push_back(msg.str());
    }
  }
  report.ok = report.violations.empty();
  return report;
}

}  // namespace symbell::lucas4
