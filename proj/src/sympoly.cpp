#include "symbell/sympoly.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <thread>

#include "symbell/convolve.hpp"
#include "symbell/necklaces.hpp"

namespace symbell {

namespace {

// Reduced coordinates straight from the Z_2m counts of a full tuple.
// Projection numerators straight from the Z_2m counts of a full tuple.
// The per-class weights are constant, so these integers are a canonical
// dedup key and the ordering they induce is the rational one.
template <typename Int>
void reduce_numerators(const ConvolutionState<Int>& state, int m, int d, std::vector<Int>& out) {
  out.resize(static_cast<std::size_t>(d));
  out[0] = state.counts[0] - state.counts[static_cast<std::size_t>(m)];
  for (int j = 1; j < d; ++j)
    out[static_cast<std::size_t>(j)] = state.counts[static_cast<std::size_t>(j)] -
                                       state.counts[static_cast<std::size_t>(m - j)] -
                                       state.counts[static_cast<std::size_t>(m + j)] +
                                       state.counts[static_cast<std::size_t>(2 * m - j)];
}

template <typename Int>
SymVertexSet enumerate_vertices_impl(const ScenarioParams& params, const SymPolyOptions& options) {
  const int m = params.n_inputs;
  const int k = params.n_parties - 1;
  const std::vector<Necklace> necklaces = enumerate_necklaces(m);
  const MultisetRange range(necklaces.size(), k, options.multiset_budget);

  const std::uint64_t words = 1ull << m;
  if (range.total() > options.projection_budget / words)
    throw BudgetExceeded("enumerate_sym_vertices: projection count exceeds budget");

  const std::uint64_t total = range.total();
  unsigned n_threads = options.threads > 0 ? static_cast<unsigned>(options.threads)
                                           : std::max(1u, std::thread::hardware_concurrency());
  const std::uint64_t chunk = std::clamp<std::uint64_t>(total / (4 * n_threads) + 1, 8, 16384);
  const std::uint64_t n_chunks = (total + chunk - 1) / chunk;
  if (n_chunks < n_threads) n_threads = static_cast<unsigned>(n_chunks);

  const int d = params.reduced_dim();
  std::atomic<std::uint64_t> next_chunk{0};
  std::mutex merge_mutex;
  std::map<std::vector<Int>, StrategyTuple> merged;

  auto worker = [&] {
    std::map<std::vector<Int>, StrategyTuple> local;
    std::vector<ConvolutionState<Int>> states(static_cast<std::size_t>(k + 1));
    states[0] = ConvolutionState<Int>::neutral(m);
    ConvolutionState<Int> full;
    std::vector<Int> key;
    std::vector<std::uint32_t> tuple;
    for (std::uint64_t c; (c = next_chunk.fetch_add(1)) < n_chunks;) {
      const std::uint64_t lo = c * chunk;
      const std::uint64_t hi = std::min(total, lo + chunk);
      tuple = range.unrank(lo);
      for (int i = 0; i < k; ++i)
        convolve_party_into(states[static_cast<std::size_t>(i + 1)], states[static_cast<std::size_t>(i)],
                            necklaces[tuple[static_cast<std::size_t>(i)]].rep);
      for (std::uint64_t rank = lo; rank < hi; ++rank) {
        for (std::uint64_t word = 0; word < words; ++word) {
          Strategy last(m, static_cast<std::uint32_t>(word));
          convolve_party_into(full, states[static_cast<std::size_t>(k)], last);
          reduce_numerators(full, m, d, key);
          auto it = local.lower_bound(key);
          if (it == local.end() || it->first != key) {
            StrategyTuple witness;
            witness.reserve(static_cast<std::size_t>(k + 1));
            for (std::uint32_t idx : tuple) witness.push_back(necklaces[idx].rep);
            witness.push_back(last);
            local.emplace_hint(it, key, std::move(witness));
          }
        }
        if (rank + 1 == hi) break;
        const int p = range.advance(tuple);
        for (int i = p; i < k; ++i)
          convolve_party_into(states[static_cast<std::size_t>(i + 1)], states[static_cast<std::size_t>(i)],
                              necklaces[tuple[static_cast<std::size_t>(i)]].rep);
      }
    }
    std::lock_guard<std::mutex> lock(merge_mutex);
    for (auto& [k2, witness] : local) merged.try_emplace(k2, std::move(witness));
  };

  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  SymVertexSet out;
  out.params = params;
  out.vertices.reserve(merged.size());
  for (auto& [nums, witness] : merged) {
    std::vector<BigRat> e(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j)
      e[static_cast<std::size_t>(j)] = BigRat(BigInt(nums[static_cast<std::size_t>(j)]), class_weight(params, j));
    out.vertices.push_back({ReducedRat(params, std::move(e)), std::move(witness)});
  }
  return out;
}

// Exact test for p on the segment [q, r] (p distinct from both).
bool on_segment(const std::vector<BigRat>& p, const std::vector<BigRat>& q,
                const std::vector<BigRat>& r) {
  const std::size_t d = p.size();
  std::size_t j0 = d;
  for (std::size_t j = 0; j < d; ++j) {
    if (q[j] != r[j]) {
      j0 = j;
      break;
    }
  }
  if (j0 == d) return false;  // q == r
  BigRat t = (p[j0] - q[j0]) / (r[j0] - q[j0]);
  if (t < 0 || t > 1) return false;
  for (std::size_t j = 0; j < d; ++j)
    if (p[j] != q[j] + t * (r[j] - q[j])) return false;
  return true;
}

}  // namespace

SymVertexSet enumerate_sym_vertices(const ScenarioParams& params, const SymPolyOptions& options) {
  BigInt span = 1;
  for (int i = 0; i < params.n_parties; ++i) span *= params.n_inputs;
  if (span < (BigInt(1) << 62)) return enumerate_vertices_impl<long long>(params, options);
  return enumerate_vertices_impl<BigInt>(params, options);
}

SymVertexSet extreme_points(const SymVertexSet& set, const SymPolyOptions& options) {
  const int d = set.params.reduced_dim();
  if (set.vertices.size() > options.extreme_set_cap || d > options.extreme_dim_cap)
    throw BudgetExceeded("extreme_points: set size or dimension exceeds cap");

  const std::size_t n = set.vertices.size();
  std::vector<std::vector<double>> pts(n);
  for (std::size_t i = 0; i < n; ++i) pts[i] = to_f64(set.vertices[i].vertex).e;

  SymVertexSet out;
  out.params = set.params;
  for (std::size_t i = 0; i < n; ++i) {
    bool eliminated = false;
    for (std::size_t q = 0; q < n && !eliminated; ++q) {
      if (q == i) continue;
      for (std::size_t r = q + 1; r < n && !eliminated; ++r) {
        if (r == i) continue;
        // float prefilter: p close to the line through q, r
        double best = 0.0;
        std::size_t j0 = 0;
        for (std::size_t j = 0; j < pts[i].size(); ++j) {
          const double dj = pts[r][j] - pts[q][j];
          if (std::fabs(dj) > std::fabs(best)) {
            best = dj;
            j0 = j;
          }
        }
        if (best == 0.0) continue;
        const double t = (pts[i][j0] - pts[q][j0]) / best;
        if (t < -1e-9 || t > 1 + 1e-9) continue;
        double residual = 0.0;
        for (std::size_t j = 0; j < pts[i].size(); ++j)
          residual = std::max(residual,
                              std::fabs(pts[i][j] - pts[q][j] - t * (pts[r][j] - pts[q][j])));
        if (residual > 1e-9) continue;
        eliminated = on_segment(set.vertices[i].vertex.e, set.vertices[q].vertex.e,
                                set.vertices[r].vertex.e);
      }
    }
    if (!eliminated) out.vertices.push_back(set.vertices[i]);
  }
  return out;
}

FacetEnumeration enumerate_facets(const SymVertexSet& set, const SymPolyOptions& options) {
  const ScenarioParams params = set.params;
  const int d = params.reduced_dim();
  if (d > options.facet_dim_cap)
    throw BudgetExceeded("enumerate_facets: dimension exceeds cap");
  SymVertexSet extremes = extreme_points(set, options);
  const std::size_t e = extremes.vertices.size();
  if (e > options.facet_extreme_cap)
    throw BudgetExceeded("enumerate_facets: extreme set exceeds cap");

  // Weighted coordinates once, exact and float.
  std::vector<std::vector<BigRat>> wexact(e);
  std::vector<std::vector<double>> wall(set.vertices.size());
  for (std::size_t i = 0; i < e; ++i) {
    wexact[i].resize(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j)
      wexact[i][static_cast<std::size_t>(j)] = BigRat(class_weight(params, j)) *
                                               extremes.vertices[i].vertex.e[static_cast<std::size_t>(j)];
  }
  for (std::size_t i = 0; i < set.vertices.size(); ++i) {
    wall[i].resize(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j)
      wall[i][static_cast<std::size_t>(j)] =
          to_double(class_weight(params, j)) * to_double(set.vertices[i].vertex.e[static_cast<std::size_t>(j)]);
  }

  std::map<std::vector<BigInt>, BigInt> found;  // normal -> bound

  std::vector<std::size_t> subset(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) subset[static_cast<std::size_t>(i)] = static_cast<std::size_t>(i);
  if (e >= static_cast<std::size_t>(d)) {
    while (true) {
      // hyperplane through the subset: <f, v_i> = 1
      RatMatrix a(static_cast<std::size_t>(d));
      for (int i = 0; i < d; ++i) a[static_cast<std::size_t>(i)] = wexact[subset[static_cast<std::size_t>(i)]];
      bool singular = false;
      std::vector<BigRat> f;
      try {
        f = rational_solve(std::move(a), std::vector<BigRat>(static_cast<std::size_t>(d), BigRat(1)));
      } catch (const std::domain_error&) {
        singular = true;
      }
      if (!singular) {
        std::vector<BigInt> normal = primitive_integer_vector(f);
        if (!found.count(normal)) {
          // validity sweep, float first then exact confirmation
          std::vector<double> nf(static_cast<std::size_t>(d));
          for (int j = 0; j < d; ++j) nf[static_cast<std::size_t>(j)] = to_double(normal[static_cast<std::size_t>(j)]);
          double fmax = -std::numeric_limits<double>::infinity();
          for (const auto& v : wall) {
            double dot = 0.0;
            for (int j = 0; j < d; ++j) dot += nf[static_cast<std::size_t>(j)] * v[static_cast<std::size_t>(j)];
            fmax = std::max(fmax, dot);
          }
          BigRat c0 = 0;
          for (int j = 0; j < d; ++j)
            c0 += BigRat(normal[static_cast<std::size_t>(j)]) * wexact[subset[0]][static_cast<std::size_t>(j)];
          const double cf = to_double(c0);
          if (fmax <= cf + 1e-6 * (1.0 + std::fabs(cf))) {
            bool valid = true;
            for (const auto& sv : set.vertices) {
              BigRat dot = 0;
              for (int j = 0; j < d; ++j)
                dot += BigRat(normal[static_cast<std::size_t>(j)]) * BigRat(class_weight(params, j)) *
                       sv.vertex.e[static_cast<std::size_t>(j)];
              if (dot > c0) {
                valid = false;
                break;
              }
            }
            if (valid) {
              if (denominator(c0) != 1)
                throw std::logic_error("enumerate_facets: non-integer bound");
              found.emplace(std::move(normal), numerator(c0));
            }
          }
        }
      }
      // next D-subset
      int pos = d - 1;
      while (pos >= 0 && subset[static_cast<std::size_t>(pos)] == e - static_cast<std::size_t>(d - pos))
        --pos;
      if (pos < 0) break;
      ++subset[static_cast<std::size_t>(pos)];
      for (int q = pos + 1; q < d; ++q)
        subset[static_cast<std::size_t>(q)] = subset[static_cast<std::size_t>(q - 1)] + 1;
    }
  }

  FacetEnumeration out;
  for (auto& [normal, bound] : found) {
    Facet facet;
    facet.normal = ReducedInt(params, normal);
    facet.bound = bound;
    out.facets.push_back(std::move(facet));
  }
  out.cross_polytope = out.facets.size() == (1ull << d);
  return out;
}

}  // namespace symbell
