#include "symbell/tables.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "symbell/lucas4.hpp"
#include "symbell/necklaces.hpp"
#include "symbell/sympoly.hpp"
#include "symbell/reference_tables_data.hpp"

namespace symbell::tables {

namespace {

std::vector<std::vector<std::string>> parse_rows(const char* text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    std::string token;
    while (ls >> token) tokens.push_back(token);
    if (!tokens.empty()) rows.push_back(std::move(tokens));
  }
  return rows;
}

}  // namespace

const std::vector<NecklaceRow>& necklace_table() {
  static const std::vector<NecklaceRow> table = [] {
    std::vector<NecklaceRow> out;
    for (const auto& row : parse_rows(data::kNecklaceCounts))
      out.push_back({std::stoi(row[0]), BigInt(row[1])});
    return out;
  }();
  return table;
}

const std::vector<VertexRow>& vertex_table() {
  static const std::vector<VertexRow> table = [] {
    std::vector<VertexRow> out;
    for (const auto& row : parse_rows(data::kVertexCounts))
      out.push_back({std::stoi(row[0]), std::stoi(row[1]), std::stoull(row[2])});
    return out;
  }();
  return table;
}

const std::vector<M4Row>& m4_table() {
  static const std::vector<M4Row> table = [] {
    std::vector<M4Row> out;
    for (const auto& row : parse_rows(data::kM4LocalBounds))
      out.push_back({std::stoi(row[0]), BigInt(row[1])});
    return out;
  }();
  return table;
}

const std::vector<LijRow>& lij_table() {
  static const std::vector<LijRow> table = [] {
    std::vector<LijRow> out;
    for (const auto& row : parse_rows(data::kLijValues))
      out.push_back({std::stoi(row[0]), std::stoi(row[1]), BigInt(row[2])});
    return out;
  }();
  return table;
}

const std::vector<VisibilityRow>& visibility_table() {
  static const std::vector<VisibilityRow> table = [] {
    std::vector<VisibilityRow> out;
    for (const auto& row : parse_rows(data::kVisibilityCertified))
      out.push_back({std::stoi(row[0]), std::stoi(row[1]), std::stod(row[2])});
    return out;
  }();
  return table;
}

ReproduceOutcome reproduce_necklaces() {
  ReproduceOutcome outcome;
  for (const auto& row : necklace_table()) {
    ++outcome.checked;
    const BigInt got = necklace_count(row.m);
    if (got != row.count) {
      std::ostringstream msg;
      msg << "u_" << row.m << ": expected " << row.count.str() << ", got " << got.str();
      outcome.mismatches.push_back(msg.str());
    }
  }
  return outcome;
}

ReproduceOutcome reproduce_vertices(std::uint64_t max_cost, int threads) {
  ReproduceOutcome outcome;
  for (const auto& row : vertex_table()) {
    const ScenarioParams params(row.n, row.m);
    const std::uint64_t tuples = exact_enumeration_count(params);
    const std::uint64_t cost =
        tuples > (std::numeric_limits<std::uint64_t>::max() >> row.m) ? std::numeric_limits<std::uint64_t>::max()
                                                                      : tuples << row.m;
    if (cost > max_cost) {
      ++outcome.skipped;
      continue;
    }
    ++outcome.checked;
    SymPolyOptions opt;
    opt.threads = threads;
    opt.projection_budget = std::max<std::uint64_t>(max_cost, 1);
    const SymVertexSet set = enumerate_sym_vertices(params, opt);
    if (set.vertices.size() != row.count) {
      std::ostringstream msg;
      msg << "vertices(N=" << row.n << ", m=" << row.m << "): expected " << row.count << ", got "
          << set.vertices.size();
      outcome.mismatches.push_back(msg.str());
    }
  }
  return outcome;
}

ReproduceOutcome reproduce_m4() {
  ReproduceOutcome outcome;
  for (const auto& row : m4_table()) {
    ++outcome.checked;
    const BigInt got = lucas4::local_bound_m4(row.n);
    if (got != row.bound) {
      std::ostringstream msg;
      msg << "L_" << row.n << "(m=4): expected " << row.bound.str() << ", got " << got.str();
      outcome.mismatches.push_back(msg.str());
    }
  }
  return outcome;
}

ReproduceOutcome reproduce_lij() {
  ReproduceOutcome outcome;
  for (const auto& row : lij_table()) {
    ++outcome.checked;
    const BigInt got = lucas4::lij(row.i, row.j);
    if (got != row.value) {
      std::ostringstream msg;
      msg << "L(" << row.i << "," << row.j << "): expected " << row.value.str() << ", got "
          << got.str();
      outcome.mismatches.push_back(msg.str());
    }
  }
  return outcome;
}

ReproduceOutcome reproduce_visibility(std::uint64_t max_cost, const FWConfig& base) {
  ReproduceOutcome outcome;
  for (const auto& row : visibility_table()) {
    const ScenarioParams params(row.n, row.m);
    if (exact_enumeration_count(params) > max_cost) {
      ++outcome.skipped;
      continue;
    }
    ++outcome.checked;
    VisibilityResult res = visibility_search(params, base);
    std::ostringstream msg;
    if (!res.converged || !res.certificate.certified_exact) {
      msg << "v(N=" << row.n << ", m=" << row.m << "): no exact certificate (" << res.status
          << ")";
      outcome.mismatches.push_back(msg.str());
    } else if (std::fabs(res.certificate.visibility - row.v) > 5e-6) {
      msg << "v(N=" << row.n << ", m=" << row.m << "): expected " << row.v << ", got "
          << res.certificate.visibility;
      outcome.mismatches.push_back(msg.str());
    }
  }
  return outcome;
}

}  // namespace symbell::tables
