// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exits nonzero on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <vector>

#include "symbell/derived.hpp"
#include "symbell/fwsolver.hpp"
#include "symbell/ineqfile.hpp"
#include "symbell/localbound.hpp"
#include "symbell/lucas4.hpp"
#include "symbell/necklaces.hpp"
#include "symbell/sympoly.hpp"
#include "symbell/tables.hpp"
#include "test_oracles.hpp"

using namespace symbell;

namespace {

struct Harness {
  int failures = 0;

  void run(int number, const std::string& label, const std::function<void(std::ostringstream&)>& body) {
    std::ostringstream detail;
    bool ok = true;
    const auto start = std::chrono::steady_clock::now();
    try {
      body(detail);
    } catch (const std::exception& e) {
      ok = false;
      detail << " exception: " << e.what();
    }
    if (!detail.str().empty() && detail.str().find("FAIL") != std::string::npos) ok = false;
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2d [%s] %-38s (%.2fs)%s\n", number, ok ? "PASS" : "FAIL",
                label.c_str(), seconds, detail.str().c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
};

#define EXPECT(cond, msg)                                  \
  do {                                                     \
    if (!(cond)) detail << " FAIL: " << msg;               \
  } while (0)

FWConfig default_config() {
  FWConfig config;
  return config;
}

}  // namespace

int main() {
  Harness h;

  h.run(1, "necklace counts (u_2..u_21)", [](std::ostringstream& detail) {
    const std::vector<long long> expected = {1,    2,    2,    4,     6,     10,   16,
                                             30,   52,   94,   172,   316,   586,  1096,
                                             2048, 3856, 7286, 13798, 26216, 49940};
    for (int m = 2; m <= 21; ++m)
      EXPECT(necklace_count(m) == expected[static_cast<std::size_t>(m - 2)],
             "u_" << m << " != " << expected[static_cast<std::size_t>(m - 2)]);
  });

  h.run(2, "worked example N=2, m=3", [](std::ostringstream& detail) {
    auto res = visibility_search(ScenarioParams(2, 3), default_config());
    EXPECT(res.converged && res.certificate.certified_exact, "no exact certificate");
    EXPECT((res.certificate.coeffs.e == std::vector<BigInt>{BigInt(2), BigInt(3)}),
           "facet not [2,3]");
    EXPECT(res.certificate.local_bound == 12, "L != 12");
    EXPECT(res.certificate.visibility_exact && *res.certificate.visibility_exact == BigRat(4, 5),
           "v != 4/5 exactly");
    double w_main = 0, w_side = 0;
    for (const auto& atom : res.model.atoms) {
      if (atom.vertex.e == std::vector<BigRat>{BigRat(1), BigRat(1, 3)}) w_main = atom.weight;
      if (atom.vertex.e == std::vector<BigRat>{BigRat(-1), BigRat(1)}) w_side = atom.weight;
    }
    EXPECT(std::fabs(w_main - 0.9) <= 1e-9 && std::fabs(w_side - 0.1) <= 1e-9,
           "weights not (9/10, 1/10) within 1e-9");
  });

  h.run(3, "facet suite m=3, N=2", [](std::ostringstream& detail) {
    auto facets = enumerate_facets(enumerate_sym_vertices(ScenarioParams(2, 3)));
    EXPECT(facets.facets.size() == 4, "expected 4 facets");
    std::map<std::vector<BigInt>, BigInt> got;
    for (const auto& f : facets.facets) got.emplace(f.normal.e, f.bound);
    const std::map<std::vector<BigInt>, BigInt> expected = {
        {{BigInt(1), BigInt(0)}, 3},
        {{BigInt(-1), BigInt(0)}, 3},
        {{BigInt(2), BigInt(3)}, 12},
        {{BigInt(-2), BigInt(-3)}, 12}};
    EXPECT(got == expected, "facet set differs");
  });

  h.run(4, "vertex counts vs reference table", [](std::ostringstream& detail) {
    const std::vector<std::tuple<int, int, std::size_t>> cells = {
        {3, 2, 2},   {3, 3, 10}, {3, 4, 10}, {3, 5, 60}, {3, 6, 100}, {3, 7, 640},
        {4, 2, 3},   {4, 3, 12}, {4, 4, 21}, {4, 5, 90}, {5, 3, 14},  {5, 4, 14},
        {5, 5, 126}, {6, 3, 16}};
    for (auto [n, m, count] : cells) {
      auto set = enumerate_sym_vertices(ScenarioParams(n, m));
      EXPECT(set.vertices.size() == count,
             "vertices(N=" << n << ", m=" << m << ") = " << set.vertices.size() << " != " << count);
    }
  });

  h.run(5, "flagship N=5, m=10 facet", [](std::ostringstream& detail) {
    FWConfig config = default_config();
    config.lmo_mode = FWConfig::LmoMode::kExact;
    auto res = visibility_search(ScenarioParams(5, 10), config);
    EXPECT(res.converged && res.certificate.certified_exact, "no exact certificate");
    EXPECT((res.certificate.coeffs.e ==
            std::vector<BigInt>{BigInt(988), BigInt(0), BigInt(575), BigInt(0), BigInt(-575)}),
           "facet coefficients differ");
    EXPECT(res.certificate.local_bound == 3280000, "L != 3280000");
    EXPECT(std::fabs(res.certificate.quantum_value - 15630000.0) <= 1e-6 * 15630000.0,
           "Q not within 1e-6 relative of 15630000");
    EXPECT(std::fabs(res.certificate.visibility - 0.20985) <= 5e-6, "v not within 5e-6 of 0.20985");
  });

  h.run(6, "visibility regression (certified cells)", [](std::ostringstream& detail) {
    const std::vector<std::tuple<int, int, double>> cells = {
        {3, 2, 0.5},     {3, 3, 0.57143}, {3, 4, 0.5},     {3, 5, 0.50794}, {3, 6, 0.49505},
        {3, 7, 0.49911}, {3, 8, 0.49317}, {4, 3, 0.39024}, {4, 4, 0.35355}, {4, 5, 0.34293},
        {4, 6, 0.33800}, {5, 3, 0.26230}, {5, 4, 0.21875}, {5, 5, 0.22521}, {5, 6, 0.21296},
        {6, 3, 0.17534}, {6, 4, 0.15468}, {7, 3, 0.11700}, {9, 3, 0.05202}};
    for (auto [n, m, v] : cells) {
      auto res = visibility_search(ScenarioParams(n, m), default_config());
      EXPECT(res.converged && res.certificate.certified_exact,
             "no exact certificate for N=" << n << ", m=" << m);
      EXPECT(std::fabs(res.certificate.visibility - v) <= 5e-6,
             "v(N=" << n << ", m=" << m << ") = " << res.certificate.visibility
                    << " not within 5e-6 of " << v);
    }
  });

  h.run(7, "m=4 closed forms (bounds, lij, recursions)", [](std::ostringstream& detail) {
    const std::vector<long long> table3 = {8,      32,     56,     224,    384,
                                           1536,   2624,   10496,  17920,  71680,
                                           122368, 489472, 835584, 3342336, 5705728};
    for (int n = 3; n <= 17; ++n)
      EXPECT(lucas4::local_bound_m4(n) == table3[static_cast<std::size_t>(n - 3)],
             "L_" << n << " differs");
    for (const auto& row : tables::lij_table())
      EXPECT(lucas4::lij(row.i, row.j) == row.value,
             "lij(" << row.i << "," << row.j << ") differs");
    EXPECT(lucas4::antidiagonal_check(20).ok, "antidiagonal check failed");
  });

  h.run(8, "m=4 visibility formula", [](std::ostringstream& detail) {
    const std::vector<double> expected = {0.5,     0.35355, 0.21875, 0.15468,
                                          0.09375, 0.06629, 0.04004, 0.02831};
    for (int n = 3; n <= 10; ++n)
      EXPECT(std::fabs(lucas4::visibility_m4(n).value - expected[static_cast<std::size_t>(n - 3)]) <=
                 5e-6,
             "v_m4(" << n << ") differs");
  });

  h.run(9, "critical detection efficiency", [](std::ostringstream& detail) {
    auto a = critical_efficiency(0.35355, 4);
    EXPECT(std::fabs(a.eta_crit - 0.7706) <= 5e-4, "eta(0.35355, 4) off");
    EXPECT(std::fabs(a.residual) <= 1e-12, "residual too large");
    auto b = critical_efficiency(0.32500, 4);
    EXPECT(std::fabs(b.eta_crit - 0.7544) <= 5e-4, "eta(0.32500, 4) off");
    EXPECT(std::fabs(b.residual) <= 1e-12, "residual too large");
  });

  h.run(10, "XY-plane lower bound", [](std::ostringstream& detail) {
    EXPECT(std::fabs(xy_lower_bound(0.49132, 224, 3) - 0.49129) <= 5e-5, "(224, 3) off");
    EXPECT(std::fabs(xy_lower_bound(0.32384, 128, 4) - 0.32374) <= 5e-5, "(128, 4) off");
  });

  h.run(11, "star-network activation", [](std::ostringstream& detail) {
    EXPECT(activation_check(0.02301, 10, 0.6875).activated, "N=10, m=9 should activate");
    EXPECT(activation_check(0.02332, 10, 0.6875).activated, "N=10, m=8 should activate");
    EXPECT(!activation_check(0.03521, 9, 0.6875).activated, "N=9 should not activate");
    EXPECT(activation_check(0.02301, 10, 0.6875).asymptotic_check, "asymptotic check at N=10");
  });

  h.run(12, "property suites", [](std::ostringstream& detail) {
    // (a) brute-force oracle equivalence of the exact local bound
    for (int n = 2; n <= 3; ++n) {
      for (int m = 2; m <= 4; ++m) {
        ScenarioParams params(n, m);
        const int d = params.reduced_dim();
        std::vector<int> coeff(static_cast<std::size_t>(d), -3);
        while (true) {
          std::vector<BigInt> e(coeff.begin(), coeff.end());
          ReducedInt f(params, e);
          if (exact_local_bound(f).bound != testing::local_bound_oracle(f)) {
            EXPECT(false, "oracle mismatch at N=" << n << ", m=" << m);
            break;
          }
          int j = d - 1;
          while (j >= 0 && coeff[static_cast<std::size_t>(j)] == 3) coeff[static_cast<std::size_t>(j--)] = -3;
          if (j < 0) break;
          ++coeff[static_cast<std::size_t>(j)];
        }
      }
    }

    // (b) projection idempotence and weighted-dot consistency
    std::mt19937_64 rng(1234);
    for (int n = 2; n <= 3; ++n) {
      for (int m = 2; m <= 5; ++m) {
        ScenarioParams params(n, m);
        for (int trial = 0; trial < 10; ++trial) {
          StrategyTuple tuple;
          for (int q = 0; q < n; ++q)
            tuple.emplace_back(m, static_cast<std::uint32_t>(rng() & ((1u << m) - 1)));
          ReducedRat v = project_strategy(tuple, params);
          EXPECT(v == testing::project_oracle(tuple, params), "projection oracle mismatch");
          ReducedRat f(params, std::vector<BigRat>(v.e.size(), BigRat(1, 2)));
          auto ft = expand_full(f);
          auto vt = expand_full(v);
          BigRat dot = 0;
          for (std::size_t i = 0; i < ft.size(); ++i) dot += ft[i] * vt[i];
          EXPECT(dot == weighted_dot(f, v), "weighted dot inconsistent");
        }
      }
    }

    // (c) FW objective monotonicity and gap soundness, 100 random runs
    std::uniform_real_distribution<double> unit(0.05, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
      const int n = 2 + static_cast<int>(rng() % 3);
      const int m = 2 + static_cast<int>(rng() % 6);
      ScenarioParams params(n, m);
      auto r = ghz_reduced(params);
      const double v0 = unit(rng);
      std::vector<double> t(r.e.size());
      for (std::size_t j = 0; j < t.size(); ++j) t[j] = v0 * r.e[j];
      FWConfig config;
      config.record_history = true;
      config.seed = trial;
      auto res = fw_minimize(ReducedF64(params, t), config);
      for (std::size_t i = 1; i < res.objective_history.size(); ++i)
        EXPECT(res.objective_history[i] <= res.objective_history[i - 1] + 1e-12,
               "objective increased");
      if (res.gap_converged && res.objective <= config.gap_tolerance) {
        double sum = 0.0, err2 = 0.0;
        std::vector<double> recon(t.size(), 0.0);
        for (const auto& atom : res.active_set) {
          EXPECT(atom.weight >= 0.0, "negative weight");
          sum += atom.weight;
          for (std::size_t j = 0; j < t.size(); ++j) recon[j] += atom.weight * atom.coords[j];
        }
        EXPECT(std::fabs(sum - 1.0) <= 1e-9, "weights do not sum to one");
        for (std::size_t j = 0; j < t.size(); ++j) {
          const double diff = recon[j] - t[j];
          err2 += (j == 0 ? 1.0 : 2.0) * diff * diff;
        }
        EXPECT(std::sqrt(err2) <= std::sqrt(2 * config.gap_tolerance) + 1e-12,
               "local model reconstruction too loose");
      }
    }

    // (d) determinism: 1 vs 8 threads, byte-identical serialized output
    for (auto [n, m] : {std::pair{3, 5}, {4, 4}}) {
      FWConfig one;
      one.threads = 1;
      FWConfig eight;
      eight.threads = 8;
      auto a = visibility_search(ScenarioParams(n, m), one);
      auto b = visibility_search(ScenarioParams(n, m), eight);
      EXPECT(a.converged && b.converged, "determinism runs failed to certify");
      const std::string sa = write_inequality(InequalityFile::from_certificate(a.certificate, 1, "x"));
      const std::string sb = write_inequality(InequalityFile::from_certificate(b.certificate, 1, "x"));
      EXPECT(sa == sb, "thread counts produced different bytes");
    }
  });

  if (h.failures == 0) {
    std::printf("acceptance: all criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) failed\n", h.failures);
  return 1;
}
