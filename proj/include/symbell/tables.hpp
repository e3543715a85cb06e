#ifndef SYMBELL_TABLES_HPP
#define SYMBELL_TABLES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "symbell/fwsolver.hpp"
#include "symbell/numeric.hpp"

namespace symbell::tables {

// Reference values embedded from data/*.txt at configure time; the
// `reproduce` command regenerates them within a cost budget and diffs.

struct NecklaceRow {
  int m;
  BigInt count;
};
struct VertexRow {
  int n, m;
  std::uint64_t count;
};
struct M4Row {
  int n;
  BigInt bound;
};
struct LijRow {
  int i, j;
  BigInt value;
};
struct VisibilityRow {
  int n, m;
  double v;
};

const std::vector<NecklaceRow>& necklace_table();
const std::vector<VertexRow>& vertex_table();
const std::vector<M4Row>& m4_table();
const std::vector<LijRow>& lij_table();
const std::vector<VisibilityRow>& visibility_table();

struct ReproduceOutcome {
  int checked = 0;
  int skipped = 0;  // cells above the cost budget
  std::vector<std::string> mismatches;

  bool all_match() const { return mismatches.empty(); }
};

ReproduceOutcome reproduce_necklaces();
ReproduceOutcome reproduce_vertices(std::uint64_t max_cost, int threads);
ReproduceOutcome reproduce_m4();
ReproduceOutcome reproduce_lij();
/// Recomputes certified visibilities whose orbit count is at most
/// max_cost; each must match the printed 5-digit value within 5e-6.
ReproduceOutcome reproduce_visibility(std::uint64_t max_cost, const FWConfig& base);

}  // namespace symbell::tables

#endif  // SYMBELL_TABLES_HPP
