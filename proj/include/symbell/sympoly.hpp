#ifndef SYMBELL_SYMPOLY_HPP
#define SYMBELL_SYMPOLY_HPP

#include <cstdint>
#include <vector>

#include "symbell/numeric.hpp"
#include "symbell/scenario.hpp"
#include "symbell/symcorr.hpp"

namespace symbell {

// Exhaustive view of the symmetrised local polytope: every distinct
// projection of a deterministic strategy, plus facet enumeration in low
// dimension (the cross-polytope diagnostic).

struct SymVertex {
  ReducedRat vertex;
  StrategyTuple witness;
};

struct SymVertexSet {
  ScenarioParams params;
  std::vector<SymVertex> vertices;  // sorted lexicographically, duplicate-free
};

struct SymPolyOptions {
  /// Cap on projections evaluated: C(u_m + N - 2, N - 1) * 2^m.
  std::uint64_t projection_budget = 100'000'000;
  std::uint64_t multiset_budget = 1'000'000'000;
  int threads = 0;
  std::size_t extreme_set_cap = 5000;
  int extreme_dim_cap = 5;
  std::size_t facet_extreme_cap = 500;
  int facet_dim_cap = 4;
};

/// The exact set of distinct symmetrised vertices, found by iterating
/// necklace multisets for N-1 parties with a free last party, projecting,
/// and deduplicating in exact arithmetic.
SymVertexSet enumerate_sym_vertices(const ScenarioParams& params, const SymPolyOptions& options = {});

/// Extreme points of the set: a point lying on the segment of two other
/// points (checked exactly) is eliminated.
SymVertexSet extreme_points(const SymVertexSet& set, const SymPolyOptions& options = {});

struct Facet {
  ReducedInt normal;  // gcd-reduced integers
  BigInt bound;       // exact; attained with >= D affinely independent vertices
};

struct FacetEnumeration {
  std::vector<Facet> facets;
  /// True when the facet count is 2^D, the cross-polytope signature.
  bool cross_polytope = false;
};

/// All facets, by brute-force supporting-hyperplane search over D-subsets
/// of extreme points with exact validation against every vertex.
/// Restricted to D <= 4 and small extreme sets (facet_* caps).
FacetEnumeration enumerate_facets(const SymVertexSet& set, const SymPolyOptions& options = {});

}  // namespace symbell

#endif  // SYMBELL_SYMPOLY_HPP
