// Python bindings for the main operations: necklace counting, local
// bounds, visibility certificates, polytope enumeration, the m = 4 closed
// forms, and the derived quantities.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "symbell/derived.hpp"
#include "symbell/fwsolver.hpp"
#include "symbell/localbound.hpp"
#include "symbell/lucas4.hpp"
#include "symbell/necklaces.hpp"
#include "symbell/sympoly.hpp"
#include "symbell/version.hpp"

namespace py = pybind11;
using namespace symbell;

namespace {

py::object to_pyint(const BigInt& x) {
  return py::module_::import("builtins").attr("int")(x.str());
}

py::object to_fraction(const BigRat& x) {
  return py::module_::import("fractions")
      .attr("Fraction")(numerator(x).str() + "/" + denominator(x).str());
}

ReducedInt coeffs_from_list(int n, int m, const py::sequence& coeffs) {
  ScenarioParams params(n, m);
  std::vector<BigInt> e;
  e.reserve(py::len(coeffs));
  for (py::handle item : coeffs) e.emplace_back(py::str(item).cast<std::string>());
  return ReducedInt(params, std::move(e));
}

py::list witness_to_list(const StrategyTuple& tuple) {
  py::list out;
  for (const Strategy& s : tuple) out.append(s.to_string());
  return out;
}

py::dict bound_to_dict(const BoundResult& res) {
  py::dict out;
  out["bound"] = to_pyint(res.bound);
  out["exact"] = res.mode == BoundMode::kExact;
  out["witness"] = witness_to_list(res.witnesses.front());
  out["tuples_evaluated"] = res.tuples_evaluated;
  return out;
}

FWConfig make_config(const std::string& lmo, std::uint64_t seed, int threads, int restarts) {
  FWConfig config;
  config.seed = seed;
  config.threads = threads;
  config.heuristic_restarts = restarts;
  if (lmo == "exact")
    config.lmo_mode = FWConfig::LmoMode::kExact;
  else if (lmo == "heuristic")
    config.lmo_mode = FWConfig::LmoMode::kHeuristic;
  else if (lmo == "auto")
    config.lmo_mode = FWConfig::LmoMode::kAuto;
  else
    throw std::invalid_argument("lmo must be 'exact', 'heuristic', or 'auto'");
  return config;
}

py::dict certificate_to_dict(const FacetCertificate& cert) {
  py::dict out;
  out["N"] = cert.params.n_parties;
  out["m"] = cert.params.n_inputs;
  py::list coeffs;
  for (const auto& c : cert.coeffs.e) coeffs.append(to_pyint(c));
  out["coeffs"] = coeffs;
  out["local_bound"] = to_pyint(cert.local_bound);
  out["certified"] = cert.certified_exact ? "EXACT" : "HEURISTIC";
  out["quantum_value"] = cert.quantum_value;
  out["quantum_expr"] = cert.quantum_expr;
  out["visibility"] = cert.visibility;
  if (cert.visibility_exact) out["visibility_exact"] = to_fraction(*cert.visibility_exact);
  out["facet"] = cert.is_facet;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Symmetric multipartite Bell inequalities for GHZ states under polygon measurements";
  m.attr("__version__") = kVersion;

  m.def(
      "necklace_count", [](int inputs) { return to_pyint(necklace_count(inputs)); },
      py::arg("m"), "Number of signed binary necklaces of length m (OEIS A000016).");

  m.def(
      "necklaces",
      [](int inputs) {
        py::list out;
        for (const Necklace& n : enumerate_necklaces(inputs)) out.append(n.rep.to_string());
        return out;
      },
      py::arg("m"), "Canonical necklace representatives as '+-' strings.");

  m.def(
      "ghz_reduced",
      [](int n, int inputs) { return ghz_reduced(ScenarioParams(n, inputs)).e; },
      py::arg("N"), py::arg("m"),
      "Reduced GHZ correlation coordinates cos(pi j / m), j < ceil(m/2).");

  m.def(
      "class_weight",
      [](int n, int inputs, int cls) { return to_pyint(class_weight(ScenarioParams(n, inputs), cls)); },
      py::arg("N"), py::arg("m"), py::arg("j"),
      "Number of index tuples in class j of the invariant subspace.");

  m.def(
      "local_bound",
      [](int n, int inputs, const py::sequence& coeffs, int threads) {
        BoundOptions opt;
        opt.threads = threads;
        return bound_to_dict(exact_local_bound(coeffs_from_list(n, inputs, coeffs), opt));
      },
      py::arg("N"), py::arg("m"), py::arg("coeffs"), py::arg("threads") = 0,
      "Exact local bound of an integer reduced functional, with a witness.");

  m.def(
      "heuristic_local_bound",
      [](int n, int inputs, const py::sequence& coeffs, std::uint64_t seed, int restarts,
         int threads) {
        BoundOptions opt;
        opt.threads = threads;
        return bound_to_dict(
            heuristic_local_bound(coeffs_from_list(n, inputs, coeffs), seed, restarts, opt));
      },
      py::arg("N"), py::arg("m"), py::arg("coeffs"), py::arg("seed") = 1,
      py::arg("restarts") = 10, py::arg("threads") = 0,
      "Alternating-minimization lower bound on the local bound.");

  m.def(
      "certify",
      [](int n, int inputs, const py::sequence& coeffs, int threads) {
        FWConfig config;
        config.threads = threads;
        return certificate_to_dict(certify(coeffs_from_list(n, inputs, coeffs), config));
      },
      py::arg("N"), py::arg("m"), py::arg("coeffs"), py::arg("threads") = 0,
      "Local bound, quantum value, visibility, and facet test of a functional.");

  m.def(
      "visibility",
      [](int n, int inputs, const std::string& lmo, std::uint64_t seed, int threads,
         int restarts) {
        VisibilityResult res = visibility_search(ScenarioParams(n, inputs),
                                                 make_config(lmo, seed, threads, restarts));
        py::dict out = certificate_to_dict(res.certificate);
        out["converged"] = res.converged;
        out["status"] = res.status;
        out["rounds"] = res.rounds;
        out["lmo_calls"] = res.lmo_calls;
        py::list model;
        for (const auto& atom : res.model.atoms) {
          py::dict entry;
          entry["weight"] = atom.weight;
          entry["strategies"] = witness_to_list(atom.witness);
          py::list vertex;
          for (const auto& x : atom.vertex.e) vertex.append(to_fraction(x));
          entry["vertex"] = vertex;
          model.append(entry);
        }
        out["local_model"] = model;
        out["local_model_error"] = res.model.reconstruction_error;
        return out;
      },
      py::arg("N"), py::arg("m"), py::arg("lmo") = "auto", py::arg("seed") = 1,
      py::arg("threads") = 0, py::arg("restarts") = 10,
      "Certified critical visibility of the N-partite GHZ state under m "
      "polygon measurements, with the facet and a local model.");

  m.def(
      "vertex_count",
      [](int n, int inputs, int threads) {
        SymPolyOptions opt;
        opt.threads = threads;
        return enumerate_sym_vertices(ScenarioParams(n, inputs), opt).vertices.size();
      },
      py::arg("N"), py::arg("m"), py::arg("threads") = 0,
      "Number of vertices of the symmetrised local polytope.");

  m.def(
      "facets",
      [](int n, int inputs) {
        py::list out;
        for (const Facet& f :
             enumerate_facets(enumerate_sym_vertices(ScenarioParams(n, inputs))).facets) {
          py::list normal;
          for (const auto& c : f.normal.e) normal.append(to_pyint(c));
          out.append(py::make_tuple(normal, to_pyint(f.bound)));
        }
        return out;
      },
      py::arg("N"), py::arg("m"), "All facets (normal, bound) of the symmetrised polytope.");

  m.def(
      "m4_local_bound", [](int n) { return to_pyint(lucas4::local_bound_m4(n)); }, py::arg("N"),
      "Closed-form local bound at m = 4.");

  m.def(
      "m4_visibility",
      [](int n) {
        const lucas4::VisibilityM4 vis = lucas4::visibility_m4(n);
        py::dict out;
        out["value"] = vis.value;
        out["exact"] = vis.exact;
        return out;
      },
      py::arg("N"), "Closed-form visibility at m = 4.");

  m.def(
      "lij", [](int i, int j) { return to_pyint(lucas4::lij(i, j)); }, py::arg("i"), py::arg("j"),
      "Induced 1-norm of R^i S^j.");

  m.def(
      "critical_efficiency",
      [](double v, int n) {
        const EfficiencyResult res = critical_efficiency(v, n);
        py::dict out;
        out["eta_crit"] = res.eta_crit;
        out["residual"] = res.residual;
        return out;
      },
      py::arg("v"), py::arg("N"), "Critical detection efficiency threshold.");

  m.def("xy_lower_bound", &xy_lower_bound, py::arg("v"), py::arg("m"), py::arg("N"),
        "XY-plane robustness lower bound from an m-gon visibility.");

  m.def(
      "activation",
      [](double v, int n, double v_low) {
        const ActivationReport rep = activation_check(v, n, v_low);
        py::dict out;
        out["activated"] = rep.activated;
        out["threshold"] = rep.threshold;
        out["margin"] = rep.margin;
        out["asymptotic_check"] = rep.asymptotic_check;
        return out;
      },
      py::arg("v"), py::arg("N"), py::arg("v_low") = 0.6875,
      "Star-network nonlocality activation test.");
}
