#include "symbell/symcorr.hpp"

#include <cmath>
#include <mutex>
#include <numbers>

#include "symbell/convolve.hpp"

namespace symbell {

IndexClass class_of_index(std::span<const int> indices, const ScenarioParams& params) {
  const int m = params.n_inputs;
  if (static_cast<int>(indices.size()) != params.n_parties)
    throw std::invalid_argument("class_of_index: wrong tuple length");
  long long s = 0;
  for (int x : indices) {
    if (x < 0 || x >= m) throw std::out_of_range("class_of_index: index out of range");
    s += x;
  }
  const long long q = s / m;
  const int r = static_cast<int>(s % m);
  if (2 * r < m) return {r, (q % 2 == 0) ? +1 : -1};
  if (2 * r > m) return {m - r, (q % 2 == 0) ? -1 : +1};
  return {-1, 0};  // even m, r = m/2
}

namespace {

// The weight closed form is checked once per process against a direct
// tuple count on all scenarios with N <= 3, m <= 6.
void validate_class_weights_once() {
  static std::once_flag flag;
  std::call_once(flag, [] {
    for (int n = 2; n <= 3; ++n) {
      for (int m = 2; m <= 6; ++m) {
        ScenarioParams params(n, m);
        const int d = params.reduced_dim();
        std::vector<long long> count(static_cast<std::size_t>(d), 0);
        std::vector<int> idx(static_cast<std::size_t>(n), 0);
        while (true) {
          IndexClass c = class_of_index(idx, params);
          if (!c.is_zero()) ++count[static_cast<std::size_t>(c.cls)];
          int p = n - 1;
          while (p >= 0 && idx[static_cast<std::size_t>(p)] == m - 1) {
            idx[static_cast<std::size_t>(p)] = 0;
            --p;
          }
          if (p < 0) break;
          ++idx[static_cast<std::size_t>(p)];
        }
        long long base = 1;
        for (int i = 0; i < n - 1; ++i) base *= m;
        for (int j = 0; j < d; ++j) {
          const long long expected = (j == 0) ? base : 2 * base;
          if (count[static_cast<std::size_t>(j)] != expected)
            throw std::logic_error("class_weight closed form failed brute-force validation");
        }
      }
    }
  });
}

BigInt pow_int(int base, int exp) {
  BigInt out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

}  // namespace

BigInt class_weight(const ScenarioParams& params, int cls) {
  validate_class_weights_once();
  if (cls < 0 || cls >= params.reduced_dim())
    throw std::out_of_range("class_weight: class out of range");
  BigInt base = pow_int(params.n_inputs, params.n_parties - 1);
  return cls == 0 ? base : 2 * base;
}

double normalized_class_weight(const ScenarioParams& params, int cls) {
  if (cls < 0 || cls >= params.reduced_dim())
    throw std::out_of_range("normalized_class_weight: class out of range");
  return cls == 0 ? 1.0 : 2.0;
}

ReducedF64 ghz_reduced(const ScenarioParams& params) {
  const int d = params.reduced_dim();
  std::vector<double> e(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j)
    e[static_cast<std::size_t>(j)] = std::cos(std::numbers::pi * j / params.n_inputs);
  return ReducedF64(params, std::move(e));
}

std::optional<BigRat> rational_cos(int cls, int m) {
  if (cls == 0) return BigRat(1);
  if (3 * cls == m) return BigRat(1, 2);
  return std::nullopt;
}

bool ghz_reduced_is_rational(const ScenarioParams& params) {
  for (int j = 0; j < params.reduced_dim(); ++j)
    if (!rational_cos(j, params.n_inputs)) return false;
  return true;
}

ReducedRat project_strategy(std::span<const Strategy> strategies, const ScenarioParams& params) {
  const int m = params.n_inputs;
  if (static_cast<int>(strategies.size()) != params.n_parties)
    throw std::invalid_argument("project_strategy: wrong number of parties");
  for (const Strategy& s : strategies)
    if (s.size() != m) throw std::invalid_argument("project_strategy: strategy length mismatch");

  // Counts fit in 64 bits iff m^N does; fall back to exact integers else.
  const bool fits = pow_int(m, params.n_parties) < (BigInt(1) << 62);
  std::vector<BigInt> counts(static_cast<std::size_t>(2 * m));
  if (fits) {
    auto state = ConvolutionState<long long>::neutral(m);
    ConvolutionState<long long> next;
    for (const Strategy& s : strategies) {
      convolve_party_into(next, state, s);
      std::swap(state, next);
    }
    for (int t = 0; t < 2 * m; ++t) counts[static_cast<std::size_t>(t)] = state.counts[static_cast<std::size_t>(t)];
  } else {
    auto state = ConvolutionState<BigInt>::neutral(m);
    ConvolutionState<BigInt> next;
    for (const Strategy& s : strategies) {
      convolve_party_into(next, state, s);
      std::swap(state, next);
    }
    counts = std::move(state.counts);
  }

  const int d = params.reduced_dim();
  std::vector<BigRat> e(static_cast<std::size_t>(d));
  e[0] = BigRat(counts[0] - counts[static_cast<std::size_t>(m)], class_weight(params, 0));
  for (int j = 1; j < d; ++j) {
    BigInt num = counts[static_cast<std::size_t>(j)] - counts[static_cast<std::size_t>(m - j)] -
                 counts[static_cast<std::size_t>(m + j)] + counts[static_cast<std::size_t>(2 * m - j)];
    e[static_cast<std::size_t>(j)] = BigRat(num, class_weight(params, j));
  }
  return ReducedRat(params, std::move(e));
}

namespace {

template <typename F, typename V, typename R>
R weighted_dot_impl(const ReducedVec<F>& f, const ReducedVec<V>& v) {
  if (f.params != v.params) throw std::invalid_argument("weighted_dot: params mismatch");
  R acc(0);
  for (int j = 0; j < f.params.reduced_dim(); ++j) {
    R w(0);
    if constexpr (std::is_same_v<R, double>)
      w = normalized_class_weight(f.params, j) * std::pow(static_cast<double>(f.params.n_inputs), f.params.n_parties - 1);
    else
      w = R(class_weight(f.params, j));
    acc += w * R(f.e[static_cast<std::size_t>(j)]) * R(v.e[static_cast<std::size_t>(j)]);
  }
  return acc;
}

}  // namespace

BigRat weighted_dot(const ReducedRat& f, const ReducedRat& v) {
  return weighted_dot_impl<BigRat, BigRat, BigRat>(f, v);
}

BigRat weighted_dot(const ReducedInt& f, const ReducedRat& v) {
  return weighted_dot_impl<BigInt, BigRat, BigRat>(f, v);
}

double weighted_dot(const ReducedF64& f, const ReducedF64& v) {
  return weighted_dot_impl<double, double, double>(f, v);
}

std::vector<BigRat> expand_full(const ReducedRat& f, std::size_t cap) {
  const int m = f.params.n_inputs;
  const int n = f.params.n_parties;
  BigInt total = 1;
  for (int i = 0; i < n; ++i) total *= m;
  if (total > BigInt(cap)) throw BudgetExceeded("expand_full: tensor larger than cap");

  const std::size_t size = total.convert_to<std::size_t>();
  std::vector<BigRat> out(size);
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  for (std::size_t flat = 0; flat < size; ++flat) {
    IndexClass c = class_of_index(idx, f.params);
    if (!c.is_zero())
      out[flat] = (c.sign > 0) ? f.e[static_cast<std::size_t>(c.cls)] : -f.e[static_cast<std::size_t>(c.cls)];
    // advance multi-index, last party fastest
    for (int p = n - 1; p >= 0; --p) {
      if (++idx[static_cast<std::size_t>(p)] < m) break;
      idx[static_cast<std::size_t>(p)] = 0;
    }
  }
  return out;
}

ReducedF64 to_f64(const ReducedInt& f) {
  std::vector<double> e(f.e.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = to_double(f.e[i]);
  return ReducedF64(f.params, std::move(e));
}

ReducedF64 to_f64(const ReducedRat& f) {
  std::vector<double> e(f.e.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = to_double(f.e[i]);
  return ReducedF64(f.params, std::move(e));
}

}  // namespace symbell
