#ifndef SYMBELL_NECKLACES_HPP
#define SYMBELL_NECKLACES_HPP

#include <cstdint>
#include <vector>

#include "symbell/numeric.hpp"
#include "symbell/scenario.hpp"

namespace symbell {

// Orbits of +-1 strategies under the signed cyclic shift (entries moved
// past the end re-enter negated). A signed shift by m is the global sign
// flip, so the acting group is cyclic of order 2m and orbit sizes divide
// 2m. These orbits are the binary necklaces counted by u_m (OEIS A000016).

/// Canonical representative of a strategy orbit.
struct Necklace {
  Strategy rep;

  bool operator==(const Necklace&) const = default;
  friend auto operator<=>(const Necklace& a, const Necklace& b) { return a.rep <=> b.rep; }
};

/// u_m = (1/2m) sum over odd divisors d of m of phi(d) 2^(m/d), in exact
/// integers (the sum is always divisible by 2m).
BigInt necklace_count(int m);

/// Lexicographic minimum (signs compared with -1 < +1) over the orbit of s
/// under signed shifts and the global flip. Idempotent.
Necklace canonical_necklace(const Strategy& s);

/// All necklaces of length m, sorted, duplicate-free. Lengths above the
/// cap (default 26) are refused.
std::vector<Necklace> enumerate_necklaces(int m, int cap = 26);

/// Canonical form of the reflected orbit (input relabeling x -> -x).
Necklace reflected_necklace(const Necklace& n);

/// Stream over all non-decreasing (N-1)-tuples of indices into a necklace
/// list, in lexicographic order. Splittable into contiguous rank ranges so
/// consumers can run in parallel and still see a deterministic sequence.
class MultisetRange {
 public:
  /// alphabet = number of necklaces u_m, tuple_len = N-1.
  MultisetRange(std::uint64_t alphabet, int tuple_len, std::uint64_t budget = 1'000'000'000);

  std::uint64_t total() const { return total_; }
  std::uint64_t alphabet() const { return alphabet_; }
  int tuple_len() const { return tuple_len_; }

  /// Tuple at a given rank (lexicographic).
  std::vector<std::uint32_t> unrank(std::uint64_t rank) const;

  /// Advances a tuple in place to its lexicographic successor; returns the
  /// lowest position whose entry changed, or -1 when exhausted.
  int advance(std::vector<std::uint32_t>& tuple) const;

  /// Number of non-decreasing tuples, C(u + k - 1, k); saturates to
  /// uint64 max on overflow.
  static std::uint64_t count(std::uint64_t alphabet, int tuple_len);

 private:
  std::uint64_t alphabet_;
  int tuple_len_;
  std::uint64_t total_;
};

/// g4 refinement predicate: true when the tuple is the canonical one among
/// {tuple, reflected(tuple)} as sorted multisets. Pruning only; every
/// orbit keeps at least one representative.
bool multiset_is_reflection_canonical(const std::vector<std::uint32_t>& tuple,
                                      const std::vector<Necklace>& necklaces,
                                      const std::vector<std::uint32_t>& reflection_map);

/// Index map i -> index of reflected_necklace(necklaces[i]).
std::vector<std::uint32_t> reflection_index_map(const std::vector<Necklace>& necklaces);

}  // namespace symbell

#endif  // SYMBELL_NECKLACES_HPP
