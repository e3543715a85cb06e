#include <doctest.h>

#include <complex>
#include <random>

#include "symbell/localbound.hpp"
#include "symbell/lucas4.hpp"
#include "symbell/tables.hpp"

using namespace symbell;
using lucas4::RootTwoScalar;

TEST_CASE("lij matches every embedded table entry") {
  for (const auto& row : tables::lij_table()) CHECK(lucas4::lij(row.i, row.j) == row.value);
}

TEST_CASE("lij spot values") {
  CHECK(lucas4::lij(0, 0) == 1);
  CHECK(lucas4::lij(4, 4) == 64);
  CHECK(lucas4::lij(0, 8) == 2624);
}

TEST_CASE("local_bound_m4 matches the reference sequence") {
  const std::vector<long long> expected = {8,      32,     56,      224,     384,
                                           1536,   2624,   10496,   17920,   71680,
                                           122368, 489472, 835584,  3342336, 5705728};
  for (int n = 3; n <= 17; ++n)
    CHECK(lucas4::local_bound_m4(n) == expected[static_cast<std::size_t>(n - 3)]);
}

TEST_CASE("triple agreement: recursion, closed form, lij, and the kernel") {
  for (int n = 3; n <= 30; n += 2) {
    // odd N: the lij edge value is the bound (local_bound_m4 already
    // cross-checks recursion against the closed form internally)
    CHECK(lucas4::local_bound_m4(n) == lucas4::lij(n - 1, 0));
    CHECK(lucas4::lij(n - 1, 0) == lucas4::lij(0, n - 1));
  }
  for (int n = 3; n <= 7; ++n) {
    ScenarioParams params(n, 4);
    std::vector<BigInt> coeffs =
        n % 2 == 1 ? std::vector<BigInt>{1, 0} : std::vector<BigInt>{0, 1};
    CHECK(exact_local_bound(ReducedInt(params, coeffs)).bound == lucas4::local_bound_m4(n));
  }
}

TEST_CASE("visibility_m4 matches the certified m=4 column") {
  const std::vector<std::pair<int, double>> expected = {
      {3, 0.5},     {4, 0.35355}, {5, 0.21875}, {6, 0.15468},
      {7, 0.09375}, {8, 0.06629}, {9, 0.04004}, {10, 0.02831}};
  for (auto [n, v] : expected)
    CHECK(lucas4::visibility_m4(n).value == doctest::Approx(v).epsilon(5e-5));

  CHECK(lucas4::visibility_m4(5).exact == "56/256");
  CHECK(lucas4::visibility_m4(4).exact == "32/(64*sqrt(2))");
  CHECK(lucas4::visibility_m4(5).value == doctest::Approx(0.21875));
}

TEST_CASE("antidiagonal recursions hold") {
  auto report = lucas4::antidiagonal_check(20);
  CHECK(report.ok);
  CHECK(report.violations.empty());

  // explicit printed identities
  CHECK(lucas4::lij(2, 2) == 8 * lucas4::lij(0, 0));
  CHECK(lucas4::lij(0, 4) == 8 * (lucas4::lij(0, 2) - lucas4::lij(0, 0)));
}

TEST_CASE("matrix determinant matches the eigenvalue product") {
  // |det R| = prod |alpha| = 8
  const lucas4::Mat4 r = lucas4::mat_r();
  // direct 4x4 determinant by cofactor expansion over exact integers
  auto det3 = [](const std::array<std::array<BigInt, 3>, 3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  BigInt det = 0;
  for (int col = 0; col < 4; ++col) {
    std::array<std::array<BigInt, 3>, 3> minor{};
    for (int i = 1; i < 4; ++i) {
      int cc = 0;
      for (int j = 0; j < 4; ++j) {
        if (j == col) continue;
        minor[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(cc++)] =
            r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      }
    }
    const BigInt term = r[0][static_cast<std::size_t>(col)] * det3(minor);
    det += (col % 2 == 0) ? term : -term;
  }
  CHECK(boost::multiprecision::abs(det) == 8);
}

TEST_CASE("floating eigenvalue formula tracks lij") {
  using C = std::complex<double>;
  const double s2 = std::sqrt(2.0);
  const C a_mp(1.0, -(s2 + 1.0));  // alpha_-+ = 1 - (sqrt2 + 1) i
  const C a_pp(1.0, s2 + 1.0);
  const C a_mm(1.0, -(s2 - 1.0));
  const C a_pm(1.0, s2 - 1.0);
  const C i_unit(0.0, 1.0);
  for (int i = 0; i + 1 <= 20; ++i) {
    for (int j = 0; i + j + 1 <= 20; ++j) {
      const C a = std::pow(a_mp, i) * std::pow(a_mm, j);
      const C b = std::pow(a_pp, i) * std::pow(a_pm, j);
      const C c = std::pow(a_mm, i) * std::pow(a_mp, j);
      const C d = std::pow(a_pm, i) * std::pow(a_pp, j);
      const double value = 0.25 * (std::abs(a + b + c + d) + std::abs(a - b - c + d) +
                                   std::abs(a + i_unit * b - i_unit * c - d) +
                                   std::abs(a - i_unit * b + i_unit * c - d));
      const double exact = to_double(lucas4::lij(i, j));
      CHECK(std::fabs(value - exact) <= 1e-6 * std::max(1.0, exact));
    }
  }
}

TEST_CASE("RootTwoScalar ring laws") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> small(-20, 20);
  std::uniform_int_distribution<int> kdist(0, 4);
  auto random_scalar = [&] {
    return RootTwoScalar(small(rng), small(rng), kdist(rng));
  };
  for (int trial = 0; trial < 200; ++trial) {
    RootTwoScalar a = random_scalar(), b = random_scalar(), c = random_scalar();
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a * b).conjugate() == a.conjugate() * b.conjugate());
    CHECK(a.to_double() == doctest::Approx(a.conjugate().to_double() +
                                           2.0 * a.b().convert_to<double>() * std::sqrt(2.0) /
                                               std::ldexp(1.0, a.k())));
  }
  CHECK(RootTwoScalar(4, 2, 2) == RootTwoScalar(2, 1, 1));  // canonical k
  CHECK(RootTwoScalar::integer(7).to_integer() == 7);
  CHECK_THROWS_AS((void)RootTwoScalar::sqrt2().to_integer(), std::domain_error);
}

TEST_CASE("lucas_l closed form values") {
  // l_1 = 2/sqrt2 = sqrt2, l_2 = 2 sqrt2, l_3 = 7/sqrt2
  CHECK(lucas4::lucas_l(1) == RootTwoScalar(0, 1, 0));
  CHECK(lucas4::lucas_l(2) == RootTwoScalar(0, 2, 0));
  CHECK(lucas4::lucas_l(3) == RootTwoScalar(0, 7, 1));
}
