// Command-line front end: visibility certificates, local bounds, polytope
// enumeration, m = 4 closed forms, derived quantities, and reference-table
// reproduction. Results go to stdout (text, or JSON with --json);
// diagnostics go to stderr. Exit codes: 0 success, 2 verification
// mismatch, 3 budget exceeded.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "symbell/derived.hpp"
#include "symbell/fwsolver.hpp"
#include "symbell/ineqfile.hpp"
#include "symbell/localbound.hpp"
#include "symbell/lucas4.hpp"
#include "symbell/necklaces.hpp"
#include "symbell/sympoly.hpp"
#include "symbell/tables.hpp"
#include "symbell/version.hpp"

namespace {

using json = nlohmann::json;
using namespace symbell;

constexpr int kExitMismatch = 2;
constexpr int kExitBudget = 3;

struct CommonOpts {
  int threads = 0;
  bool as_json = false;
};

std::string config_hash_string(const FWConfig& config) {
  std::ostringstream canon;
  canon << "gap=" << config.gap_tolerance << ";iters=" << config.max_iterations
        << ";lmo=" << static_cast<int>(config.lmo_mode) << ";restarts=" << config.heuristic_restarts
        << ";seed=" << config.seed << ";thr=" << config.exact_lmo_party_threshold
        << ";auto=" << config.exact_auto_budget << ";budget=" << config.multiset_budget
        << ";rounds=" << config.max_rounds << ";overshoot=" << config.overshoot
        << ";scale=" << config.gradient_scale;
  return hex64(fnv1a64(canon.str()));
}

json certificate_to_json(const FacetCertificate& cert, const VisibilityResult* vis) {
  json j;
  j["N"] = cert.params.n_parties;
  j["m"] = cert.params.n_inputs;
  json coeffs = json::array();
  for (const auto& c : cert.coeffs.e) coeffs.push_back(c.str());
  j["coeffs"] = coeffs;
  j["L"] = cert.local_bound.str();
  j["Q"] = cert.quantum_value;
  j["Q_expr"] = cert.quantum_expr;
  j["v"] = cert.visibility;
  if (cert.visibility_exact)
    j["v_exact"] = numerator(*cert.visibility_exact).str() + "/" +
                   denominator(*cert.visibility_exact).str();
  j["certified"] = cert.certified_exact ? "EXACT" : "HEURISTIC";
  j["facet"] = cert.is_facet;
  if (!cert.certified_exact) j["trivial_strategy_saturates"] = cert.trivial_strategy_saturates;
  if (vis) {
    j["rounds"] = vis->rounds;
    j["lmo_calls"] = vis->lmo_calls;
    j["status"] = vis->status;
    json model = json::array();
    for (const auto& atom : vis->model.atoms) {
      json entry;
      entry["weight"] = atom.weight;
      json vertex = json::array();
      for (const auto& x : atom.vertex.e)
        vertex.push_back(numerator(x).str() + "/" + denominator(x).str());
      entry["vertex"] = vertex;
      json strategies = json::array();
      for (const auto& s : atom.witness) strategies.push_back(s.to_string());
      entry["strategies"] = strategies;
      model.push_back(entry);
    }
    j["local_model"] = model;
    j["local_model_error"] = vis->model.reconstruction_error;
  }
  return j;
}

int run_visibility(int n, int m, const std::string& lmo_name, std::uint64_t seed,
                   std::uint64_t budget, const CommonOpts& common, const std::string& out_path) {
  FWConfig config;
  config.seed = seed;
  config.threads = common.threads;
  if (budget) config.multiset_budget = budget;
  if (lmo_name == "exact")
    config.lmo_mode = FWConfig::LmoMode::kExact;
  else if (lmo_name == "heuristic")
    config.lmo_mode = FWConfig::LmoMode::kHeuristic;
  else
    config.lmo_mode = FWConfig::LmoMode::kAuto;

  const ScenarioParams params(n, m);
  const std::string chash = config_hash_string(config);

  RunCache cache;
  std::ostringstream key_params;
  key_params << "N=" << n << ",m=" << m;
  const std::string key = cache.key("visibility", key_params.str(), chash);

  std::string payload;
  if (auto cached = cache.load(key)) {
    std::cerr << "cache hit (" << key << ")\n";
    payload = *cached;
  } else {
    VisibilityResult res = visibility_search(params, config);
    if (!res.converged) {
      std::cerr << "visibility search did not certify a facet: " << res.status << "\n";
      if (!res.certificate.coeffs.e.empty()) {
        std::cerr << "best separating inequality so far:\n";
        InequalityFile partial = InequalityFile::from_certificate(res.certificate, seed, chash);
        std::cerr << write_inequality(partial);
      }
      return kExitMismatch;
    }
    InequalityFile file = InequalityFile::from_certificate(res.certificate, seed, chash);
    if (common.as_json) {
      payload = certificate_to_json(res.certificate, &res).dump(2) + "\n";
    } else {
      payload = write_inequality(file);
    }
    cache.store(key, payload);
  }

  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    out << payload;
    std::cerr << "wrote " << out_path << "\n";
  } else {
    std::cout << payload;
  }
  return 0;
}

int run_local_bound(const std::string& in_path, bool brute_force, std::uint64_t budget,
                    const CommonOpts& common) {
  std::ifstream in(in_path, std::ios::binary);
  if (!in) {
    std::cerr << "cannot open " << in_path << "\n";
    return 1;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  const InequalityFile file = parse_inequality(buf.str());
  const ReducedInt coeffs = file.coefficients();

  BoundOptions opt;
  opt.threads = common.threads;
  if (budget) opt.multiset_budget = budget;

  BigInt bound;
  if (brute_force) {
    const int n = coeffs.params.n_parties;
    const int m = coeffs.params.n_inputs;
    if ((n - 1) * (m - 1) > 30) throw BudgetExceeded("brute force limited to (N-1)(m-1) <= 30");
    const AntiperiodicProfile<BigInt> profile = antiperiodic_profile(coeffs);
    // all sign-normalized tuples (first entry fixed to -1), last party free
    const std::uint64_t total = 1ull << ((n - 1) * (m - 1));
    for (std::uint64_t code = 0; code < total; ++code) {
      auto state = ConvolutionState<BigInt>::neutral(m);
      ConvolutionState<BigInt> scratch;
      std::uint64_t rest = code;
      for (int party = 0; party < n - 1; ++party) {
        const std::uint32_t word = static_cast<std::uint32_t>((rest & ((1u << (m - 1)) - 1)) << 1);
        rest >>= (m - 1);
        convolve_party_into(scratch, state, Strategy(m, word));
        std::swap(state, scratch);
      }
      BigInt score = score_with_last_party(profile, state).score;
      if (score > bound) bound = score;
    }
  } else {
    bound = exact_local_bound(coeffs, opt).bound;
  }

  const bool matches = bound.str() == file.local_bound;
  if (common.as_json) {
    json j;
    j["L_file"] = file.local_bound;
    j["L_recomputed"] = bound.str();
    j["match"] = matches;
    j["method"] = brute_force ? "brute-force" : "orbit-enumeration";
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "L_file=" << file.local_bound << "\n";
    std::cout << "L_recomputed=" << bound.str() << "\n";
    std::cout << "match=" << (matches ? "yes" : "no") << "\n";
  }
  if (!matches) {
    std::cerr << "local bound mismatch\n";
    return kExitMismatch;
  }
  return 0;
}

int run_vertices(int n, int m, const CommonOpts& common) {
  SymPolyOptions opt;
  opt.threads = common.threads;
  const SymVertexSet set = enumerate_sym_vertices(ScenarioParams(n, m), opt);
  if (common.as_json) {
    json j;
    j["N"] = n;
    j["m"] = m;
    j["count"] = set.vertices.size();
    json vertices = json::array();
    for (const auto& v : set.vertices) {
      json entry = json::array();
      for (const auto& x : v.vertex.e)
        entry.push_back(numerator(x).str() + "/" + denominator(x).str());
      vertices.push_back(entry);
    }
    j["vertices"] = vertices;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "count=" << set.vertices.size() << "\n";
    for (const auto& v : set.vertices) {
      for (std::size_t j = 0; j < v.vertex.e.size(); ++j)
        std::cout << (j ? " " : "") << numerator(v.vertex.e[j]).str() << "/"
                  << denominator(v.vertex.e[j]).str();
      std::cout << "\n";
    }
  }
  return 0;
}

int run_facets(int n, int m, const CommonOpts& common) {
  SymPolyOptions opt;
  opt.threads = common.threads;
  const SymVertexSet set = enumerate_sym_vertices(ScenarioParams(n, m), opt);
  const FacetEnumeration facets = enumerate_facets(set, opt);
  if (common.as_json) {
    json j;
    j["N"] = n;
    j["m"] = m;
    j["count"] = facets.facets.size();
    j["cross_polytope"] = facets.cross_polytope;
    json list = json::array();
    for (const auto& f : facets.facets) {
      json entry;
      json normal = json::array();
      for (const auto& c : f.normal.e) normal.push_back(c.str());
      entry["normal"] = normal;
      entry["bound"] = f.bound.str();
      list.push_back(entry);
    }
    j["facets"] = list;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "count=" << facets.facets.size()
              << " cross_polytope=" << (facets.cross_polytope ? "yes" : "no") << "\n";
    for (const auto& f : facets.facets) {
      for (std::size_t j = 0; j < f.normal.e.size(); ++j)
        std::cout << (j ? " " : "") << f.normal.e[j].str();
      std::cout << " <= " << f.bound.str() << "\n";
    }
  }
  return 0;
}

int run_necklaces(int m, const CommonOpts& common) {
  const BigInt count = necklace_count(m);
  const bool enumerable = m <= 26;
  std::vector<Necklace> necklaces;
  if (enumerable) necklaces = enumerate_necklaces(m);
  if (common.as_json) {
    json j;
    j["m"] = m;
    j["count"] = count.str();
    if (enumerable) {
      json reps = json::array();
      for (const auto& n : necklaces) reps.push_back(n.rep.to_string());
      j["representatives"] = reps;
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "u_" << m << "=" << count.str() << "\n";
    for (const auto& n : necklaces) std::cout << n.rep.to_string() << "\n";
  }
  return 0;
}

int run_m4(int parties, int table_max, const CommonOpts& common) {
  if (parties > 0) {
    const BigInt bound = lucas4::local_bound_m4(parties);
    const lucas4::VisibilityM4 vis = lucas4::visibility_m4(parties);
    if (common.as_json) {
      json j;
      j["N"] = parties;
      j["L"] = bound.str();
      j["v"] = vis.value;
      j["v_exact"] = vis.exact;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "L=" << bound.str() << "\n";
      std::cout << "v=" << render_double(vis.value) << "\n";
      std::cout << "v_exact=" << vis.exact << "\n";
    }
    return 0;
  }
  const lucas4::AntidiagonalReport report = lucas4::antidiagonal_check(table_max);
  if (common.as_json) {
    json j;
    j["N_max"] = report.n_max;
    j["ok"] = report.ok;
    j["violations"] = report.violations;
    json rows = json::array();
    for (int i = 0; i + 1 <= table_max; ++i) {
      json row = json::array();
      for (int jdx = 0; i + jdx + 1 <= table_max; ++jdx) row.push_back(lucas4::lij(i, jdx).str());
      rows.push_back(row);
    }
    j["lij"] = rows;
    std::cout << j.dump(2) << "\n";
  } else {
    for (int i = 0; i + 1 <= table_max; ++i) {
      for (int jdx = 0; i + jdx + 1 <= table_max; ++jdx)
        std::cout << (jdx ? " " : "") << lucas4::lij(i, jdx).str();
      std::cout << "\n";
    }
    std::cout << "recursions_and_antidiagonals=" << (report.ok ? "ok" : "violated") << "\n";
    for (const auto& v : report.violations) std::cerr << v << "\n";
  }
  return report.ok ? 0 : kExitMismatch;
}

int run_efficiency(double v, int n, const CommonOpts& common) {
  const EfficiencyResult res = critical_efficiency(v, n);
  if (common.as_json) {
    json j;
    j["v"] = v;
    j["N"] = n;
    j["eta_crit"] = res.eta_crit;
    j["residual"] = res.residual;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "eta_crit=" << render_double(res.eta_crit) << "\n";
    std::cout << "residual=" << render_double(res.residual) << "\n";
  }
  return 0;
}

int run_xy_bound(double v, int m, int n, const CommonOpts& common) {
  const double bound = xy_lower_bound(v, m, n);
  if (common.as_json) {
    json j;
    j["v"] = v;
    j["m"] = m;
    j["N"] = n;
    j["xy_lower_bound"] = bound;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "xy_lower_bound=" << render_double(bound) << "\n";
  }
  return 0;
}

int run_activation(double v, int n, double vlow, const CommonOpts& common) {
  const ActivationReport report = activation_check(v, n, vlow);
  if (common.as_json) {
    json j;
    j["v"] = report.visibility;
    j["N"] = report.n_parties;
    j["v_low"] = report.v_low;
    j["threshold"] = report.threshold;
    j["activated"] = report.activated;
    j["margin"] = report.margin;
    j["asymptotic_check"] = report.asymptotic_check;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "threshold=" << render_double(report.threshold) << "\n";
    std::cout << "activated=" << (report.activated ? "yes" : "no") << "\n";
    std::cout << "margin=" << render_double(report.margin) << "\n";
    std::cout << "asymptotic_check=" << (report.asymptotic_check ? "yes" : "no") << "\n";
  }
  return 0;
}

int run_reproduce(const std::string& table, std::uint64_t max_cost, std::uint64_t seed,
                  const CommonOpts& common) {
  tables::ReproduceOutcome outcome;
  if (table == "I") {
    outcome = tables::reproduce_necklaces();
  } else if (table == "II") {
    outcome = tables::reproduce_vertices(max_cost, common.threads);
  } else if (table == "III") {
    outcome = tables::reproduce_m4();
  } else if (table == "V") {
    FWConfig config;
    config.seed = seed;
    config.threads = common.threads;
    outcome = tables::reproduce_visibility(max_cost, config);
  } else if (table == "Lij") {
    outcome = tables::reproduce_lij();
  } else {
    std::cerr << "unknown table '" << table << "' (expected I, II, III, V, or Lij)\n";
    return 1;
  }

  if (common.as_json) {
    json j;
    j["table"] = table;
    j["checked"] = outcome.checked;
    j["skipped"] = outcome.skipped;
    j["mismatches"] = outcome.mismatches;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "table=" << table << " checked=" << outcome.checked
              << " skipped=" << outcome.skipped << " mismatches=" << outcome.mismatches.size()
              << "\n";
  }
  for (const auto& miss : outcome.mismatches) std::cerr << miss << "\n";
  if (!outcome.all_match()) return kExitMismatch;
  if (outcome.checked == 0 && outcome.skipped > 0) {
    std::cerr << "every cell exceeded the cost budget\n";
    return kExitBudget;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symmetric multipartite Bell inequalities for the GHZ state under polygon measurements"};
  app.set_version_flag("--version", symbell::kVersion);
  app.require_subcommand(1);

  CommonOpts common;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--threads", common.threads, "Worker threads (0 = all cores)");
    sub->add_flag("--json", common.as_json, "Machine-readable output on stdout");
  };

  // visibility
  int n = 0, m = 0;
  std::string lmo_name = "auto", out_path, in_path, table_name;
  std::uint64_t seed = 1, budget = 0, max_cost = 10'000;
  bool brute_force = false;
  double value = 0.0, vlow = 0.6875;
  int parties = 0, table_max = 12;

  CLI::App* vis = app.add_subcommand("visibility", "Certify the critical visibility for (N, m)");
  vis->add_option("-N,--parties", n, "Number of parties")->required();
  vis->add_option("-m,--inputs", m, "Number of measurements per party")->required();
  vis->add_option("--lmo", lmo_name, "LMO mode: exact, heuristic, auto")
      ->check(CLI::IsMember({"exact", "heuristic", "auto"}));
  vis->add_option("--seed", seed, "Random seed for heuristic restarts");
  vis->add_option("--budget", budget, "Orbit enumeration budget");
  vis->add_option("-o,--output", out_path, "Write the inequality file here");
  add_common(vis);

  CLI::App* lb = app.add_subcommand("local-bound", "Recompute the local bound of an inequality file");
  lb->add_option("-i,--input", in_path, "Inequality file (.ineq)")->required();
  lb->add_flag("--brute-force", brute_force, "Use the full strategy enumeration oracle");
  lb->add_option("--budget", budget, "Orbit enumeration budget");
  add_common(lb);

  CLI::App* vert = app.add_subcommand("vertices", "Enumerate symmetrised polytope vertices");
  vert->add_option("-N,--parties", n, "Number of parties")->required();
  vert->add_option("-m,--inputs", m, "Number of measurements per party")->required();
  add_common(vert);

  CLI::App* fac = app.add_subcommand("facets", "Enumerate symmetrised polytope facets (small D)");
  fac->add_option("-N,--parties", n, "Number of parties")->required();
  fac->add_option("-m,--inputs", m, "Number of measurements per party")->required();
  add_common(fac);

  CLI::App* neck = app.add_subcommand("necklaces", "Count and list signed binary necklaces");
  neck->add_option("-m,--inputs", m, "Strategy length")->required();
  add_common(neck);

  CLI::App* m4 = app.add_subcommand("m4", "Closed-form m = 4 local bounds and visibilities");
  CLI::Option* m4_parties = m4->add_option("--parties", parties, "Number of parties N");
  m4->add_option("--table", table_max, "Print the L_ij table up to N_max and verify recursions")
      ->excludes(m4_parties);
  add_common(m4);

  CLI::App* eff = app.add_subcommand("efficiency", "Critical detection efficiency");
  eff->add_option("-v,--visibility", value, "Certified visibility in (0,1)")->required();
  eff->add_option("-N,--parties", n, "Number of parties")->required();
  add_common(eff);

  CLI::App* xy = app.add_subcommand("xy-bound", "XY-plane robustness lower bound");
  xy->add_option("-v,--visibility", value, "Certified m-gon visibility")->required();
  xy->add_option("-m,--inputs", m, "Number of measurements per party")->required();
  xy->add_option("-N,--parties", n, "Number of parties")->required();
  add_common(xy);

  CLI::App* act = app.add_subcommand("activation", "Star-network activation test");
  act->add_option("-v,--visibility", value, "Certified visibility")->required();
  act->add_option("-N,--parties", n, "Number of parties")->required();
  act->add_option("--vlow", vlow, "Two-qubit isotropic nonlocality lower bound");
  add_common(act);

  CLI::App* rep = app.add_subcommand("reproduce", "Regenerate an embedded reference table and diff");
  rep->add_option("--table", table_name, "Table: I, II, III, V, or Lij")->required();
  rep->add_option("--max-cost", max_cost, "Skip cells costlier than this");
  rep->add_option("--seed", seed, "Random seed");
  add_common(rep);

  CLI11_PARSE(app, argc, argv);

  try {
    if (vis->parsed()) return run_visibility(n, m, lmo_name, seed, budget, common, out_path);
    if (lb->parsed()) return run_local_bound(in_path, brute_force, budget, common);
    if (vert->parsed()) return run_vertices(n, m, common);
    if (fac->parsed()) return run_facets(n, m, common);
    if (neck->parsed()) return run_necklaces(m, common);
    if (m4->parsed()) return run_m4(parties, table_max, common);
    if (eff->parsed()) return run_efficiency(value, n, common);
    if (xy->parsed()) return run_xy_bound(value, m, n, common);
    if (act->parsed()) return run_activation(value, n, vlow, common);
    if (rep->parsed()) return run_reproduce(table_name, max_cost, seed, common);
  } catch (const symbell::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
