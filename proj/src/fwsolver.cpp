#include "symbell/fwsolver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>

namespace symbell {

namespace {

std::vector<double> norm_weights(const ScenarioParams& params) {
  std::vector<double> w(static_cast<std::size_t>(params.reduced_dim()), 2.0);
  w[0] = 1.0;
  return w;
}

// Weighted inner product rescaled by m^(N-1); an overall scale keeps the
// geometry of the full tensors while staying well conditioned in doubles.
double ndot(const std::vector<double>& w, const std::vector<double>& a,
            const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) acc += w[j] * a[j] * b[j];
  return acc;
}

std::vector<double> axpy(const std::vector<double>& x, double gamma, const std::vector<double>& d) {
  std::vector<double> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = x[j] + gamma * d[j];
  return out;
}

ReducedInt integerize_direction(const std::vector<double>& dir, const ScenarioParams& params,
                                double scale) {
  std::vector<BigInt> e(dir.size());
  bool all_zero = true;
  for (std::size_t j = 0; j < dir.size(); ++j) {
    e[j] = BigInt(static_cast<long long>(std::llround(dir[j] * scale)));
    if (e[j] != 0) all_zero = false;
  }
  if (!all_zero) {
    BigInt g = 0;
    for (const auto& x : e) g = boost::multiprecision::gcd(g, x);
    for (auto& x : e) x /= g;
  }
  return ReducedInt(params, std::move(e));
}

bool lmo_use_exact(const ScenarioParams& params, const FWConfig& config) {
  switch (config.lmo_mode) {
    case FWConfig::LmoMode::kExact:
      return true;
    case FWConfig::LmoMode::kHeuristic:
      return false;
    case FWConfig::LmoMode::kAuto:
      break;
  }
  if (params.n_parties >= config.exact_lmo_party_threshold) return true;
  return exact_enumeration_count(params) <= config.exact_auto_budget;
}

BoundOptions bound_options(const FWConfig& config) {
  BoundOptions opt;
  opt.multiset_budget = config.multiset_budget;
  opt.threads = config.threads;
  return opt;
}

ActiveAtom lmo_call(const std::vector<double>& gradient, const ScenarioParams& params,
                    const FWConfig& config, std::uint64_t call_id) {
  std::vector<double> negated(gradient.size());
  for (std::size_t j = 0; j < gradient.size(); ++j) negated[j] = -gradient[j];
  ReducedInt dir = integerize_direction(negated, params, config.gradient_scale);
  BoundResult res;
  if (lmo_use_exact(params, config)) {
    res = exact_local_bound(dir, bound_options(config));
  } else {
    const std::uint64_t stream = config.seed + 0xA24BAED4963EE407ull * (call_id + 1);
    res = heuristic_local_bound(dir, stream, config.heuristic_restarts, bound_options(config));
  }
  return make_atom(res.witnesses.front(), params);
}

/// Active-set pool with exact-vertex deduplication.
struct Pool {
  std::vector<ActiveAtom> atoms;
  std::map<std::vector<BigRat>, std::size_t> index;

  std::size_t add(ActiveAtom atom) {
    auto [it, inserted] = index.try_emplace(atom.vertex.e, atoms.size());
    if (inserted) {
      atoms.push_back(std::move(atom));
    } else {
      atoms[it->second].weight += atom.weight;
    }
    return it->second;
  }
};

std::string format_quantum_expr(const ReducedInt& coeffs) {
  const ScenarioParams& p = coeffs.params;
  std::ostringstream out;
  bool first = true;
  for (int j = 0; j < p.reduced_dim(); ++j) {
    const BigInt& c = coeffs.e[static_cast<std::size_t>(j)];
    if (c == 0) continue;
    if (!first) out << " + ";
    first = false;
    out << class_weight(p, j).str() << "*(" << c.str() << ")*cos(" << j << "*pi/" << p.n_inputs
        << ")";
  }
  if (first) out << "0";
  return out.str();
}

}  // namespace

ActiveAtom make_atom(const StrategyTuple& witness, const ScenarioParams& params) {
  ActiveAtom atom;
  atom.vertex = project_strategy(witness, params);
  atom.witness = witness;
  atom.coords = to_f64(atom.vertex).e;
  atom.weight = 0.0;
  return atom;
}

ActiveAtom lmo(const ReducedF64& gradient, const FWConfig& config) {
  config.validate();
  return lmo_call(gradient.e, gradient.params, config, 0);
}

FWMinimizeResult fw_minimize(const ReducedF64& target, const FWConfig& config,
                             std::vector<ActiveAtom> warm_start) {
  config.validate();
  const ScenarioParams params = target.params;
  const std::vector<double> w = norm_weights(params);
  const std::size_t dim = target.e.size();

  Pool pool;
  for (auto& atom : warm_start) pool.add(std::move(atom));

  FWMinimizeResult out;
  auto call_lmo = [&](const std::vector<double>& g) {
    ++out.lmo_calls;
    return lmo_call(g, params, config, static_cast<std::uint64_t>(out.lmo_calls));
  };

  double total = 0.0;
  for (const auto& atom : pool.atoms) total += atom.weight;
  if (pool.atoms.empty() || total <= 0.0) {
    std::vector<double> g0(dim);
    for (std::size_t j = 0; j < dim; ++j) g0[j] = -target.e[j];
    std::size_t idx = pool.add(call_lmo(g0));
    for (auto& atom : pool.atoms) atom.weight = 0.0;
    pool.atoms[idx].weight = 1.0;
  } else {
    for (auto& atom : pool.atoms) atom.weight /= total;
  }

  auto recompute_x = [&] {
    std::vector<double> x(dim, 0.0);
    for (const auto& atom : pool.atoms)
      for (std::size_t j = 0; j < dim; ++j) x[j] += atom.weight * atom.coords[j];
    return x;
  };

  std::vector<double> x = recompute_x();
  std::vector<double> g(dim);
  auto refresh_gradient = [&] {
    for (std::size_t j = 0; j < dim; ++j) g[j] = x[j] - target.e[j];
  };

  // Bootstrap the lazy-gap estimate with one true LMO call.
  refresh_gradient();
  {
    std::size_t idx = pool.add(call_lmo(g));
    const double true_gap = ndot(w, g, x) - ndot(w, g, pool.atoms[idx].coords);
    out.fw_gap = true_gap;
    if (true_gap <= config.gap_tolerance) {
      out.gap_converged = true;
    } else {
      std::vector<double> d(dim);
      for (std::size_t j = 0; j < dim; ++j) d[j] = pool.atoms[idx].coords[j] - x[j];
      const double dd = ndot(w, d, d);
      double gamma = dd > 0 ? std::clamp(-ndot(w, g, d) / dd, 0.0, 1.0) : 0.0;
      for (auto& atom : pool.atoms) atom.weight *= (1.0 - gamma);
      pool.atoms[idx].weight += gamma;
      x = axpy(x, gamma, d);
    }
  }
  double phi = out.fw_gap / 2;

  auto record = [&] {
    if (!config.record_history) return;
    std::vector<double> diff(dim);
    for (std::size_t j = 0; j < dim; ++j) diff[j] = x[j] - target.e[j];
    out.objective_history.push_back(0.5 * ndot(w, diff, diff));
  };
  record();

  long iter = 0;
  while (!out.gap_converged && iter < config.max_iterations) {
    ++iter;
    refresh_gradient();

    // Local step candidates: away atom among carried weight, descent atom
    // over the whole memory.
    std::size_t away = pool.atoms.size(), local = 0;
    double away_val = -std::numeric_limits<double>::infinity();
    double local_val = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pool.atoms.size(); ++i) {
      const double val = ndot(w, g, pool.atoms[i].coords);
      if (pool.atoms[i].weight > 0 && val > away_val) {
        away_val = val;
        away = i;
      }
      if (val < local_val) {
        local_val = val;
        local = i;
      }
    }

    if (away < pool.atoms.size() && away != local && away_val - local_val >= phi) {
      // Pairwise step: shift weight from the away atom to the descent atom.
      std::vector<double> d(dim);
      for (std::size_t j = 0; j < dim; ++j)
        d[j] = pool.atoms[local].coords[j] - pool.atoms[away].coords[j];
      const double dd = ndot(w, d, d);
      if (dd <= 0) {
        phi /= 2;
        continue;
      }
      const double gamma_max = pool.atoms[away].weight;
      const double gamma = std::clamp(-ndot(w, g, d) / dd, 0.0, gamma_max);
      pool.atoms[away].weight -= gamma;
      pool.atoms[local].weight += gamma;
      if (pool.atoms[away].weight < 1e-15) {
        pool.atoms[local].weight += pool.atoms[away].weight;
        pool.atoms[away].weight = 0.0;
      }
      x = axpy(x, gamma, d);
    } else {
      const std::size_t idx = pool.add(call_lmo(g));
      const double true_gap = ndot(w, g, x) - ndot(w, g, pool.atoms[idx].coords);
      out.fw_gap = true_gap;
      if (true_gap <= config.gap_tolerance) {
        out.gap_converged = true;
        break;
      }
      if (true_gap >= phi) {
        std::vector<double> d(dim);
        for (std::size_t j = 0; j < dim; ++j) d[j] = pool.atoms[idx].coords[j] - x[j];
        const double dd = ndot(w, d, d);
        const double gamma = dd > 0 ? std::clamp(true_gap / dd, 0.0, 1.0) : 0.0;
        for (auto& atom : pool.atoms) atom.weight *= (1.0 - gamma);
        pool.atoms[idx].weight += gamma;
        x = axpy(x, gamma, d);
      } else {
        phi = true_gap / 2;
      }
    }

    if (iter % 64 == 0) x = recompute_x();
    record();
  }

  x = recompute_x();
  refresh_gradient();
  if (!out.gap_converged) {
    // Measure the final gap honestly with one more oracle call.
    const std::size_t idx = pool.add(call_lmo(g));
    out.fw_gap = ndot(w, g, x) - ndot(w, g, pool.atoms[idx].coords);
    out.gap_converged = out.fw_gap <= config.gap_tolerance;
  }
  out.objective = 0.5 * ndot(w, g, g);
  out.iterations = iter;
  out.iterate = std::move(x);
  out.active_set = std::move(pool.atoms);
  return out;
}

ReducedInt extract_facet(const std::vector<ReducedRat>& vertices) {
  if (vertices.empty()) throw std::invalid_argument("extract_facet: no vertices");
  const ScenarioParams params = vertices.front().params;
  const int d = params.reduced_dim();
  if (static_cast<int>(vertices.size()) != d)
    throw std::invalid_argument("extract_facet: need exactly D vertices");

  RatMatrix a(static_cast<std::size_t>(d), std::vector<BigRat>(static_cast<std::size_t>(d)));
  std::vector<BigRat> rhs(static_cast<std::size_t>(d), BigRat(1));
  for (int i = 0; i < d; ++i) {
    if (vertices[static_cast<std::size_t>(i)].params != params)
      throw std::invalid_argument("extract_facet: params mismatch");
    for (int j = 0; j < d; ++j)
      a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          BigRat(class_weight(params, j)) * vertices[static_cast<std::size_t>(i)].e[static_cast<std::size_t>(j)];
  }
  std::vector<BigRat> f = rational_solve(std::move(a), std::move(rhs));
  std::vector<BigInt> coeffs = primitive_integer_vector(f);

  ReducedInt out(params, std::move(coeffs));
  if (weighted_dot(to_f64(out), ghz_reduced(params)) < 0)
    for (auto& c : out.e) c = -c;
  return out;
}

FacetCertificate certify(const ReducedInt& coeffs, const FWConfig& config) {
  config.validate();
  const ScenarioParams params = coeffs.params;
  const int d = params.reduced_dim();

  FacetCertificate cert;
  cert.params = params;
  cert.coeffs = coeffs;
  BigInt g = 0;
  for (const auto& c : cert.coeffs.e) g = boost::multiprecision::gcd(g, c);
  if (g > 1)
    for (auto& c : cert.coeffs.e) c /= g;

  cert.quantum_value = weighted_dot(to_f64(cert.coeffs), ghz_reduced(params));
  if (cert.quantum_value < 0) {
    for (auto& c : cert.coeffs.e) c = -c;
    cert.quantum_value = -cert.quantum_value;
  }
  cert.quantum_expr = format_quantum_expr(cert.coeffs);
  if (ghz_reduced_is_rational(params)) {
    BigRat q = 0;
    for (int j = 0; j < d; ++j)
      q += BigRat(class_weight(params, j)) * BigRat(cert.coeffs.e[static_cast<std::size_t>(j)]) *
           *rational_cos(j, params.n_inputs);
    cert.quantum_exact = q;
  }

  BoundOptions opt = bound_options(config);
  if (exact_enumeration_count(params) <= opt.multiset_budget) {
    opt.collect_saturating = true;
    BoundResult res = exact_local_bound(cert.coeffs, opt);
    cert.local_bound = res.bound;
    cert.certified_exact = true;

    // Saturating symmetrised vertices: facet iff exactly D affinely
    // independent ones (on a hyperplane missing the origin, affine and
    // linear independence coincide).
    std::map<std::vector<BigRat>, StrategyTuple> distinct;
    for (const auto& witness : res.witnesses)
      distinct.try_emplace(project_strategy(witness, params).e, witness);
    RankTracker tracker(d);
    for (const auto& [vertex, witness] : distinct) {
      if (tracker.add_row(vertex)) {
        cert.saturating_vertices.emplace_back(params, vertex);
        cert.saturating_witnesses.push_back(witness);
      }
      if (tracker.rank() == d) break;
    }
    cert.is_facet = tracker.rank() == d && cert.local_bound > 0;
  } else {
    BoundResult res =
        heuristic_local_bound(cert.coeffs, config.seed, config.heuristic_restarts, opt);
    cert.local_bound = res.bound;
    cert.certified_exact = false;

    // Putative-bound diagnostic: the all-minus strategy on the first N-1
    // parties tends to reach the heuristic value.
    StrategyTuple trivial(static_cast<std::size_t>(params.n_parties - 1),
                          Strategy::all_minus(params.n_inputs));
    AntiperiodicProfile<BigInt> profile = antiperiodic_profile(cert.coeffs);
    auto state = ConvolutionState<BigInt>::neutral(params.n_inputs);
    ConvolutionState<BigInt> scratch;
    for (const Strategy& s : trivial) {
      convolve_party_into(scratch, state, s);
      std::swap(state, scratch);
    }
    cert.trivial_strategy_saturates = score_with_last_party(profile, state).score == res.bound;
  }

  cert.visibility = to_double(cert.local_bound) / cert.quantum_value;
  if (cert.quantum_exact && *cert.quantum_exact != 0)
    cert.visibility_exact = BigRat(cert.local_bound) / *cert.quantum_exact;
  return cert;
}


namespace {

struct Saturator {
  ReducedRat vertex;
  StrategyTuple witness;
};

/// Barycentric weights of target over D linearly independent vertices
/// (plain double Gaussian elimination; exactness is not needed here, the
/// certificate carries it). Rejects decompositions with negative weights.
std::optional<std::vector<double>> barycentric_weights(const std::vector<ReducedRat>& vertices,
                                                       const std::vector<double>& target) {
  const std::size_t d = target.size();
  if (vertices.size() != d) return std::nullopt;
  std::vector<std::vector<double>> a(d, std::vector<double>(d + 1, 0.0));
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < d; ++i) a[j][i] = to_double(vertices[i].e[j]);
    a[j][d] = target[j];
  }
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < d; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
    if (std::fabs(a[pivot][col]) < 1e-14) return std::nullopt;
    std::swap(a[col], a[pivot]);
    for (std::size_t r = 0; r < d; ++r) {
      if (r == col) continue;
      const double factor = a[r][col] / a[col][col];
      for (std::size_t c = col; c <= d; ++c) a[r][c] -= factor * a[col][c];
    }
  }
  std::vector<double> lambda(d);
  for (std::size_t i = 0; i < d; ++i) lambda[i] = a[i][d] / a[i][i];
  for (double l : lambda)
    if (l < -1e-9) return std::nullopt;
  return lambda;
}

/// Best rational p/q with q <= qmax approximating x to within tol, by
/// continued fractions.
std::optional<std::pair<long long, long long>> rational_approx(double x, long long qmax,
                                                               double tol) {
  long long p_prev = 1, q_prev = 0;
  long long p_cur = static_cast<long long>(std::floor(x));
  long long q_cur = 1;
  double frac = x - std::floor(x);
  for (int it = 0; it < 64; ++it) {
    if (std::fabs(x - static_cast<double>(p_cur) / static_cast<double>(q_cur)) <= tol)
      return std::make_pair(p_cur, q_cur);
    if (frac < 1e-15) break;
    const double inv = 1.0 / frac;
    const long long a = static_cast<long long>(std::floor(inv));
    frac = inv - std::floor(inv);
    const long long p_next = a * p_cur + p_prev;
    const long long q_next = a * q_cur + q_prev;
    if (q_next > qmax || q_next <= 0) break;
    p_prev = p_cur;
    q_prev = q_cur;
    p_cur = p_next;
    q_cur = q_next;
  }
  return std::nullopt;
}

/// Integer functional proportional to the float direction, recovered by
/// per-entry continued fractions. The converged Frank-Wolfe gradient is
/// parallel to the facet normal to ~1e-10, far more accurate than the
/// ~1/(2 h^2) needed to pin integer coefficients of height h.
std::optional<ReducedInt> rationalize_direction(const std::vector<double>& dir,
                                                const ScenarioParams& params, long long qmax,
                                                double tol) {
  std::size_t j0 = 0;
  for (std::size_t j = 1; j < dir.size(); ++j)
    if (std::fabs(dir[j]) > std::fabs(dir[j0])) j0 = j;
  if (dir[j0] == 0.0) return std::nullopt;

  BigInt den_lcm = 1;
  std::vector<std::pair<long long, long long>> ratios(dir.size());
  for (std::size_t j = 0; j < dir.size(); ++j) {
    auto pq = rational_approx(dir[j] / dir[j0], qmax, tol);
    if (!pq) return std::nullopt;
    ratios[j] = *pq;
    den_lcm = boost::multiprecision::lcm(den_lcm, BigInt(pq->second));
  }
  std::vector<BigInt> e(dir.size());
  BigInt g = 0;
  for (std::size_t j = 0; j < dir.size(); ++j) {
    e[j] = BigInt(ratios[j].first) * (den_lcm / ratios[j].second);
    g = boost::multiprecision::gcd(g, e[j]);
  }
  if (g == 0) return std::nullopt;
  for (auto& x : e) x /= g;
  return ReducedInt(params, std::move(e));
}

bool trace_enabled() {
  static const bool on = std::getenv("SYMBELL_TRACE") != nullptr;
  return on;
}

}  // namespace

VisibilityResult visibility_search(const ScenarioParams& params, const FWConfig& config) {
  config.validate();
  const int d = params.reduced_dim();
  const ReducedF64 r_hat = ghz_reduced(params);
  const std::vector<double> w = norm_weights(params);
  const bool exact_cert_possible = exact_enumeration_count(params) <= config.multiset_budget;

  VisibilityResult out;
  out.status = "no separating facet found";

  double v = 1.0;
  std::vector<ActiveAtom> atoms;
  FacetCertificate cert;
  bool have_cert = false;
  FWMinimizeResult model_run;
  ReducedInt best_direction;  // latest separating functional, for failure reports

  auto target_at = [&](double vis) {
    std::vector<double> t(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) t[static_cast<std::size_t>(j)] = vis * r_hat.e[static_cast<std::size_t>(j)];
    return ReducedF64(params, std::move(t));
  };

  // Accepts a candidate certificate if a warm verification run shows the
  // target v_f r to be local, i.e. the ray really exits through this facet.
  auto verify_candidate = [&](FacetCertificate candidate) -> bool {
    if (!(candidate.visibility > 0) || candidate.visibility > v * (1.0 + 1e-9)) return false;
    FWMinimizeResult run = fw_minimize(target_at(candidate.visibility), config, std::move(atoms));
    out.lmo_calls += run.lmo_calls;
    atoms = std::move(run.active_set);
    const bool local = run.gap_converged && run.objective <= config.gap_tolerance;
    if (trace_enabled())
      std::cerr << "[visibility]   verify v=" << candidate.visibility
                << " objective=" << run.objective << " -> " << (local ? "local" : "not local")
                << "\n";
    if (!local) return false;
    run.active_set = atoms;  // keep decomposition for the local model
    model_run = std::move(run);
    cert = std::move(candidate);
    have_cert = true;
    return true;
  };

  // Facet through D affinely independent saturators of the current
  // hyperplane, certified exactly when the budget allows.
  auto try_extraction = [&](std::vector<Saturator> candidates) -> bool {
    RankTracker tracker(d);
    std::vector<Saturator> chosen;
    for (auto& sat : candidates) {
      if (tracker.add_row(sat.vertex.e)) chosen.push_back(std::move(sat));
      if (tracker.rank() == d) break;
    }
    if (trace_enabled())
      std::cerr << "[visibility]   extraction candidates=" << candidates.size()
                << " rank=" << tracker.rank() << "/" << d << "\n";
    if (tracker.rank() != d) return false;

    std::vector<ReducedRat> vertices;
    vertices.reserve(chosen.size());
    for (const auto& sat : chosen) vertices.push_back(sat.vertex);
    ReducedInt coeffs;
    try {
      coeffs = extract_facet(vertices);
    } catch (const std::domain_error&) {
      return false;
    }

    FacetCertificate candidate = certify(coeffs, config);
    BigRat value_at_vertices = weighted_dot(candidate.coeffs, chosen.front().vertex);
    if (denominator(value_at_vertices) != 1) return false;
    if (candidate.certified_exact) {
      if (BigRat(candidate.local_bound) != value_at_vertices) return false;  // hyperplane cut
    } else {
      // Putative route: the extraction vertices witness this value, so the
      // heuristic bound may be lifted to it; above it the hyperplane is
      // already known invalid.
      if (BigRat(candidate.local_bound) > value_at_vertices) return false;
      candidate.local_bound = numerator(value_at_vertices);
      candidate.visibility = to_double(candidate.local_bound) / candidate.quantum_value;
      if (candidate.quantum_exact && *candidate.quantum_exact != 0)
        candidate.visibility_exact = BigRat(candidate.local_bound) / *candidate.quantum_exact;
      candidate.is_facet = true;  // D independent saturators of the putative bound
      candidate.saturating_vertices = std::move(vertices);
      candidate.saturating_witnesses.clear();
      for (auto& sat : chosen) candidate.saturating_witnesses.push_back(std::move(sat.witness));
    }
    if (!candidate.is_facet) return false;
    return verify_candidate(std::move(candidate));
  };

  for (int round = 1; round <= config.max_rounds && !have_cert; ++round) {
    out.rounds = round;
    FWMinimizeResult res = fw_minimize(target_at(v), config, std::move(atoms));
    atoms = std::move(res.active_set);
    out.lmo_calls += res.lmo_calls;

    std::vector<double> f_dir(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j)
      f_dir[static_cast<std::size_t>(j)] =
          v * r_hat.e[static_cast<std::size_t>(j)] - res.iterate[static_cast<std::size_t>(j)];
    const double gnorm2 = ndot(w, f_dir, f_dir);
    if (gnorm2 <= 1e-24) {
      out.status = "target inside the polytope; nothing to separate";
      break;
    }

    // Atoms saturating the current separating hyperplane <f_dir, .> = c.
    const double c = ndot(w, f_dir, res.iterate);
    double spread = 0.0;
    std::vector<double> dots(atoms.size());
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      dots[i] = ndot(w, f_dir, atoms[i].coords);
      spread = std::max(spread, std::fabs(c - dots[i]));
    }
    const double tol = std::max(1e-6 * spread, 1e3 * std::max(res.fw_gap, 0.0)) + 1e-14;
    std::vector<Saturator> sats;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if (dots[i] >= c - tol) sats.push_back({atoms[i].vertex, atoms[i].witness});

    if (trace_enabled())
      std::cerr << "[visibility] round " << round << " v=" << v << " obj=" << res.objective
                << " gap=" << res.fw_gap << " pool=" << atoms.size()
                << " saturating=" << sats.size() << "\n";

    if (try_extraction(std::move(sats))) break;

    // Exact-normal recovery: rationalize the converged gradient direction
    // and certify it with the enumeration kernel, whose maximizer set then
    // yields all facet vertices at once.
    if (exact_cert_possible) {
      if (auto guess = rationalize_direction(f_dir, params, 1'000'000, 1e-8)) {
        best_direction = *guess;
        FacetCertificate candidate = certify(*guess, config);
        if (trace_enabled())
          std::cerr << "[visibility]   rationalized guess certifies v=" << candidate.visibility
                    << " facet=" << candidate.is_facet << "\n";
        if (candidate.certified_exact && candidate.is_facet &&
            verify_candidate(std::move(candidate)))
          break;
      }
    } else {
      best_direction = integerize_direction(f_dir, params, config.gradient_scale);
    }

    const double denom = ndot(w, f_dir, r_hat.e);
    if (denom <= 0) {
      out.status = "separating hyperplane does not cross the GHZ ray";
      break;
    }
    const double v_next = c / denom * (1.0 + config.overshoot);
    if (!(v_next < v)) {
      out.status = "visibility restarts stalled";
      break;
    }
    v = v_next;
  }

  if (!have_cert) {
    // Report the best separating inequality found, uncertified as a facet.
    if (!best_direction.e.empty()) out.certificate = certify(best_direction, config);
    out.converged = false;
    return out;
  }

  // Local model of v* r at the certified visibility: barycentric weights
  // over the facet vertices when the target lies in their simplex, else
  // the converged Frank-Wolfe decomposition.
  const double v_star = cert.visibility;
  const ReducedF64 target = target_at(v_star);
  LocalModel model;
  model.visibility = v_star;
  if (auto lambda = barycentric_weights(cert.saturating_vertices, target.e);
      lambda && cert.saturating_witnesses.size() == cert.saturating_vertices.size()) {
    double sum = 0.0;
    for (double l : *lambda) sum += std::max(0.0, l);
    for (std::size_t i = 0; i < cert.saturating_vertices.size(); ++i) {
      const double weight = std::max(0.0, (*lambda)[i]) / sum;
      if (weight <= 0) continue;
      ActiveAtom atom;
      atom.vertex = cert.saturating_vertices[i];
      atom.witness = cert.saturating_witnesses[i];
      atom.coords = to_f64(atom.vertex).e;
      atom.weight = weight;
      model.atoms.push_back(std::move(atom));
    }
  } else {
    for (const auto& atom : model_run.active_set)
      if (atom.weight > 1e-12) model.atoms.push_back(atom);
  }
  std::vector<double> recon(static_cast<std::size_t>(d), 0.0);
  for (const auto& atom : model.atoms)
    for (int j = 0; j < d; ++j)
      recon[static_cast<std::size_t>(j)] += atom.weight * atom.coords[static_cast<std::size_t>(j)];
  double err2 = 0.0;
  for (int j = 0; j < d; ++j) {
    const double diff = recon[static_cast<std::size_t>(j)] - target.e[static_cast<std::size_t>(j)];
    err2 += w[static_cast<std::size_t>(j)] * diff * diff;
  }
  model.reconstruction_error = std::sqrt(err2);

  out.certificate = std::move(cert);
  out.model = std::move(model);
  out.converged = true;
  out.status = out.certificate.certified_exact ? "certified" : "putative";
  return out;
}

}  // namespace symbell
