#include "symbell/localbound.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <random>
#include <thread>

namespace symbell {

namespace {

BigInt pow_bigint(int base, int exp) {
  BigInt out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

BigInt max_abs_coeff(const ReducedInt& f) {
  BigInt out = 0;
  for (const auto& x : f.e) {
    BigInt a = boost::multiprecision::abs(x);
    if (a > out) out = a;
  }
  return out;
}

template <typename Int>
AntiperiodicProfile<Int> make_profile(const ReducedInt& f) {
  AntiperiodicProfile<BigInt> exact = antiperiodic_profile(f);
  if constexpr (std::is_same_v<Int, BigInt>) {
    return exact;
  } else {
    AntiperiodicProfile<Int> out;
    out.m = exact.m;
    out.f.resize(exact.f.size());
    for (std::size_t i = 0; i < exact.f.size(); ++i)
      out.f[i] = exact.f[i].template convert_to<Int>();
    return out;
  }
}

struct SatHit {
  std::uint64_t rank;
  std::uint32_t last_word;
  std::uint32_t zero_mask;
};

template <typename Int>
struct RangeBest {
  bool has = false;
  Int score{};
  std::uint64_t rank = 0;
  std::uint32_t last_word = 0;
  std::uint64_t evaluated = 0;
  std::vector<SatHit> sats;
};

template <typename Int>
void merge_best(RangeBest<Int>& into, RangeBest<Int>&& from, bool collect, std::size_t cap) {
  into.evaluated += from.evaluated;
  if (!from.has) return;
  if (!into.has || from.score > into.score) {
    into.has = true;
    into.score = from.score;
    into.rank = from.rank;
    into.last_word = from.last_word;
    into.sats = std::move(from.sats);
  } else if (from.score == into.score) {
    if (from.rank < into.rank) {
      into.rank = from.rank;
      into.last_word = from.last_word;
    }
    if (collect) {
      into.sats.insert(into.sats.end(), from.sats.begin(), from.sats.end());
      std::sort(into.sats.begin(), into.sats.end(),
                [](const SatHit& a, const SatHit& b) { return a.rank < b.rank; });
      if (into.sats.size() > cap) into.sats.resize(cap);
    }
  }
}

template <typename Int>
BoundResult exact_bound_impl(const ReducedInt& f, const BoundOptions& opt) {
  const ScenarioParams params = f.params;
  const int m = params.n_inputs;
  const int k = params.n_parties - 1;

  const std::vector<Necklace> necklaces = enumerate_necklaces(m, opt.necklace_cap);
  const MultisetRange range(necklaces.size(), k, opt.multiset_budget);
  const AntiperiodicProfile<Int> profile = make_profile<Int>(f);
  std::vector<std::uint32_t> refl_map;
  if (opt.g4_refinement) refl_map = reflection_index_map(necklaces);

  const std::uint64_t total = range.total();
  unsigned n_threads = opt.threads > 0 ? static_cast<unsigned>(opt.threads)
                                       : std::max(1u, std::thread::hardware_concurrency());
  const std::uint64_t chunk = std::clamp<std::uint64_t>(total / (8 * n_threads) + 1, 64, 65536);
  const std::uint64_t n_chunks = (total + chunk - 1) / chunk;
  if (n_chunks < n_threads) n_threads = static_cast<unsigned>(n_chunks);

  std::atomic<std::uint64_t> next_chunk{0};
  std::mutex merge_mutex;
  RangeBest<Int> best;

  auto worker = [&] {
    RangeBest<Int> local;
    std::vector<ConvolutionState<Int>> states(static_cast<std::size_t>(k + 1));
    states[0] = ConvolutionState<Int>::neutral(m);
    std::vector<std::uint32_t> tuple;
    for (std::uint64_t c; (c = next_chunk.fetch_add(1)) < n_chunks;) {
      const std::uint64_t lo = c * chunk;
      const std::uint64_t hi = std::min(total, lo + chunk);
      tuple = range.unrank(lo);
      for (int i = 0; i < k; ++i)
        convolve_party_into(states[static_cast<std::size_t>(i + 1)], states[static_cast<std::size_t>(i)],
                            necklaces[tuple[static_cast<std::size_t>(i)]].rep);
      for (std::uint64_t rank = lo; rank < hi; ++rank) {
        const bool keep =
            !opt.g4_refinement || multiset_is_reflection_canonical(tuple, necklaces, refl_map);
        if (keep) {
          const auto sc = score_with_last_party(profile, states[static_cast<std::size_t>(k)]);
          ++local.evaluated;
          if (!local.has || sc.score > local.score) {
            local.has = true;
            local.score = sc.score;
            local.rank = rank;
            local.last_word = sc.last.word();
            if (opt.collect_saturating) {
              local.sats.clear();
              local.sats.push_back({rank, sc.last.word(), sc.zero_inputs});
            }
          } else if (sc.score == local.score && opt.collect_saturating &&
                     local.sats.size() < opt.max_saturating) {
            local.sats.push_back({rank, sc.last.word(), sc.zero_inputs});
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
    merge_best(best, std::move(local), opt.collect_saturating, opt.max_saturating);
  };

  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  if (!best.has) throw std::logic_error("exact_local_bound: empty enumeration");

  auto materialize = [&](std::uint64_t rank, std::uint32_t last_word) {
    StrategyTuple out;
    out.reserve(static_cast<std::size_t>(params.n_parties));
    for (std::uint32_t idx : range.unrank(rank)) out.push_back(necklaces[idx].rep);
    out.emplace_back(m, last_word);
    return out;
  };

  BoundResult result;
  result.bound = BigInt(best.score);
  result.mode = BoundMode::kExact;
  result.tuples_evaluated = best.evaluated;
  result.witnesses.push_back(materialize(best.rank, best.last_word));
  if (opt.collect_saturating) {
    for (const SatHit& hit : best.sats) {
      // Inputs where the last-party contraction vanished admit both signs
      // at the same score; enumerate those variants up to the cap.
      std::uint32_t sub = 0;
      while (true) {
        if (!(hit.rank == best.rank && (hit.last_word ^ sub) == best.last_word))
          result.witnesses.push_back(materialize(hit.rank, hit.last_word ^ sub));
        if (result.witnesses.size() >= opt.max_saturating) break;
        if (sub == hit.zero_mask) break;
        sub = (sub - hit.zero_mask) & hit.zero_mask;  // next submask
      }
      if (result.witnesses.size() >= opt.max_saturating) break;
    }
  }
  return result;
}

}  // namespace

bool kernel_fits_int64(const ScenarioParams& params, const BigInt& max_coeff) {
  return pow_bigint(params.n_inputs, params.n_parties) * max_coeff < (BigInt(1) << 62);
}

std::uint64_t exact_enumeration_count(const ScenarioParams& params) {
  const BigInt u = necklace_count(params.n_inputs);
  if (u > BigInt(std::numeric_limits<std::uint32_t>::max()))
    return std::numeric_limits<std::uint64_t>::max();
  return MultisetRange::count(u.convert_to<std::uint64_t>(), params.n_parties - 1);
}

BoundResult exact_local_bound(const ReducedInt& f, const BoundOptions& options) {
  if (kernel_fits_int64(f.params, max_abs_coeff(f)))
    return exact_bound_impl<long long>(f, options);
  return exact_bound_impl<BigInt>(f, options);
}

std::pair<BigRat, BoundResult> exact_local_bound_rational(const ReducedRat& f,
                                                          const BoundOptions& options) {
  BigInt den_lcm = 1;
  for (const auto& x : f.e) den_lcm = boost::multiprecision::lcm(den_lcm, denominator(x));
  std::vector<BigInt> scaled(f.e.size());
  for (std::size_t i = 0; i < f.e.size(); ++i)
    scaled[i] = numerator(f.e[i]) * (den_lcm / denominator(f.e[i]));
  BoundResult res = exact_local_bound(ReducedInt(f.params, std::move(scaled)), options);
  return {BigRat(res.bound, den_lcm), std::move(res)};
}

namespace {

template <typename Int>
std::pair<BigInt, StrategyTuple> heuristic_restart(const AntiperiodicProfile<Int>& profile,
                                                   const ScenarioParams& params,
                                                   std::uint64_t stream_seed) {
  const int m = params.n_inputs;
  const int n = params.n_parties;
  std::mt19937_64 rng(stream_seed);
  std::uniform_int_distribution<std::uint32_t> dist(0, (1u << m) - 1u);

  StrategyTuple tuple;
  tuple.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) tuple.emplace_back(m, dist(rng));

  Int score{};
  ConvolutionState<Int> state, scratch;
  constexpr int kMaxPasses = 256;
  for (int pass = 0; pass < kMaxPasses; ++pass) {
    bool changed = false;
    for (int party = 0; party < n; ++party) {
      state = ConvolutionState<Int>::neutral(m);
      for (int other = 0; other < n; ++other) {
        if (other == party) continue;
        convolve_party_into(scratch, state, tuple[static_cast<std::size_t>(other)]);
        std::swap(state, scratch);
      }
      const auto sc = score_with_last_party(profile, state);
      if (!(sc.last == tuple[static_cast<std::size_t>(party)])) {
        tuple[static_cast<std::size_t>(party)] = sc.last;
        changed = true;
      }
      score = sc.score;
    }
    if (!changed) break;
  }
  return {BigInt(score), std::move(tuple)};
}

}  // namespace

BoundResult heuristic_local_bound(const ReducedInt& f, std::uint64_t seed, int restarts,
                                  const BoundOptions& options) {
  if (restarts < 1) throw std::invalid_argument("heuristic_local_bound: need restarts >= 1");
  const ScenarioParams params = f.params;
  const bool fits = kernel_fits_int64(params, max_abs_coeff(f));
  const AntiperiodicProfile<long long> prof_i64 =
      fits ? make_profile<long long>(f) : AntiperiodicProfile<long long>{};
  const AntiperiodicProfile<BigInt> prof_big =
      fits ? AntiperiodicProfile<BigInt>{} : make_profile<BigInt>(f);

  auto run_one = [&](int r) {
    const std::uint64_t stream = seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(r + 1);
    return fits ? heuristic_restart(prof_i64, params, stream)
                : heuristic_restart(prof_big, params, stream);
  };

  std::vector<std::pair<BigInt, StrategyTuple>> results(static_cast<std::size_t>(restarts));
  unsigned n_threads = options.threads > 0 ? static_cast<unsigned>(options.threads)
                                           : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(restarts));
  if (n_threads <= 1) {
    for (int r = 0; r < restarts; ++r) results[static_cast<std::size_t>(r)] = run_one(r);
  } else {
    std::atomic<int> next{0};
    auto worker = [&] {
      for (int r; (r = next.fetch_add(1)) < restarts;) results[static_cast<std::size_t>(r)] = run_one(r);
    };
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::size_t best = 0;
  for (std::size_t r = 1; r < results.size(); ++r) {
    if (results[r].first > results[best].first ||
        (results[r].first == results[best].first && results[r].second < results[best].second))
      best = r;
  }

  BoundResult out;
  out.bound = results[best].first;
  out.witnesses.push_back(std::move(results[best].second));
  out.mode = BoundMode::kHeuristicLower;
  out.tuples_evaluated = static_cast<std::uint64_t>(restarts);
  return out;
}

BigInt evaluate_bell_value(const ReducedInt& f, const StrategyTuple& tuple) {
  if (static_cast<int>(tuple.size()) != f.params.n_parties)
    throw std::invalid_argument("evaluate_bell_value: wrong tuple size");
  const int m = f.params.n_inputs;
  if (kernel_fits_int64(f.params, max_abs_coeff(f))) {
    auto profile = make_profile<long long>(f);
    auto state = ConvolutionState<long long>::neutral(m);
    ConvolutionState<long long> scratch;
    for (const Strategy& s : tuple) {
      convolve_party_into(scratch, state, s);
      std::swap(state, scratch);
    }
    return BigInt(profile_value(profile, state));
  }
  auto profile = make_profile<BigInt>(f);
  auto state = ConvolutionState<BigInt>::neutral(m);
  ConvolutionState<BigInt> scratch;
  for (const Strategy& s : tuple) {
    convolve_party_into(scratch, state, s);
    std::swap(state, scratch);
  }
  return profile_value(profile, state);
}

}  // namespace symbell
