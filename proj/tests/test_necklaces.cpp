#include <doctest.h>

#include <set>

#include "symbell/necklaces.hpp"

using namespace symbell;

TEST_CASE("necklace_count matches the reference sequence") {
  // A000016: m -> u_m
  const std::vector<std::pair<int, long long>> expected = {
      {1, 1},   {2, 1},   {3, 2},    {4, 2},    {5, 4},    {6, 6},    {7, 10},
      {8, 16},  {9, 30},  {10, 52},  {11, 94},  {12, 172}, {13, 316}, {14, 586},
      {15, 1096}, {16, 2048}, {17, 3856}, {18, 7286}, {19, 13798}, {20, 26216}, {21, 49940}};
  for (auto [m, u] : expected) CHECK(necklace_count(m) == u);
}

TEST_CASE("enumeration agrees with the counting formula") {
  for (int m = 1; m <= 14; ++m) {
    auto list = enumerate_necklaces(m);
    CHECK(BigInt(list.size()) == necklace_count(m));
    // sorted and duplicate-free
    for (std::size_t i = 1; i < list.size(); ++i) CHECK(list[i - 1] < list[i]);
  }
  CHECK(enumerate_necklaces(2).size() == 1);
  CHECK(enumerate_necklaces(10).size() == 52);
  CHECK_THROWS_AS((void)enumerate_necklaces(27), BudgetExceeded);
}

TEST_CASE("m=3 representatives are the two printed orbits") {
  auto list = enumerate_necklaces(3);
  REQUIRE(list.size() == 2);
  CHECK(list[0].rep == Strategy::from_string("---"));
  CHECK(list[1].rep == Strategy::from_string("-+-"));
}

TEST_CASE("canonicalization is stable over the whole orbit") {
  for (int m = 2; m <= 8; ++m) {
    const std::uint32_t limit = 1u << m;
    for (std::uint32_t word = 0; word < limit; ++word) {
      Strategy s(m, word);
      Necklace canon = canonical_necklace(s);
      CHECK(canonical_necklace(canon.rep) == canon);  // idempotent
      Strategy g = s;
      for (int k = 0; k < 2 * m; ++k) {
        g = g.shifted();
        CHECK(canonical_necklace(g) == canon);
        CHECK(canonical_necklace(g.negated()) == canon);  // global flip = shift by m
      }
    }
  }
}

TEST_CASE("global sign flip stays in the orbit") {
  Strategy s = Strategy::from_string("+-+");
  CHECK(canonical_necklace(s) == canonical_necklace(s.negated()));
}

TEST_CASE("reflection maps necklaces to necklaces") {
  for (int m = 2; m <= 10; ++m) {
    auto list = enumerate_necklaces(m);
    auto map = reflection_index_map(list);
    for (std::size_t i = 0; i < list.size(); ++i) {
      CHECK(map[i] < list.size());
      // reflecting twice returns to the original orbit
      CHECK(map[map[i]] == i);
    }
  }
}

TEST_CASE("multiset range counts and unranking") {
  CHECK(MultisetRange::count(52, 4) == 341055);  // C(55, 4)
  CHECK(MultisetRange::count(2, 4) == 5);        // C(5, 4) = N+... for m=4, N=5
  CHECK(MultisetRange::count(2, 1) == 2);        // m=3, N=2 case

  MultisetRange range(5, 3);
  std::vector<std::uint32_t> cursor = range.unrank(0);
  for (std::uint64_t rank = 0; rank < range.total(); ++rank) {
    CHECK(range.unrank(rank) == cursor);
    for (std::size_t i = 1; i < cursor.size(); ++i) CHECK(cursor[i - 1] <= cursor[i]);
    if (rank + 1 < range.total()) REQUIRE(range.advance(cursor) >= 0);
  }
  CHECK(range.advance(cursor) < 0);
  CHECK_THROWS_AS((void)MultisetRange(100, 9, 1000), BudgetExceeded);
}

TEST_CASE("splitting the stream is equivalent to one pass") {
  MultisetRange range(6, 3);
  std::vector<std::vector<std::uint32_t>> whole;
  auto cursor = range.unrank(0);
  for (std::uint64_t rank = 0; rank < range.total(); ++rank) {
    whole.push_back(cursor);
    range.advance(cursor);
  }
  for (std::uint64_t split = 1; split < range.total(); split += 7) {
    std::vector<std::vector<std::uint32_t>> parts;
    for (std::uint64_t lo : {std::uint64_t{0}, split}) {
      const std::uint64_t hi = lo == 0 ? split : range.total();
      auto c = range.unrank(lo);
      for (std::uint64_t rank = lo; rank < hi; ++rank) {
        parts.push_back(c);
        range.advance(c);
      }
    }
    CHECK(parts == whole);
  }
}

TEST_CASE("multiset orbits cover all sign-normalized tuples") {
  // Every (N-1)-tuple of strategies should reduce, via per-party signed
  // shifts with the total shift absorbed elsewhere, to a non-decreasing
  // tuple of necklace representatives.
  for (int m = 2; m <= 4; ++m) {
    auto necklaces = enumerate_necklaces(m);
    for (int parties = 1; parties <= 3; ++parties) {
      std::set<std::vector<std::uint32_t>> seen;
      std::vector<std::uint32_t> words(static_cast<std::size_t>(parties), 0);
      const std::uint32_t limit = 1u << m;
      while (true) {
        std::vector<std::uint32_t> reduced;
        for (std::uint32_t w : words) {
          Necklace c = canonical_necklace(Strategy(m, w));
          auto it = std::lower_bound(necklaces.begin(), necklaces.end(), c);
          REQUIRE(it != necklaces.end());
          reduced.push_back(static_cast<std::uint32_t>(it - necklaces.begin()));
        }
        std::sort(reduced.begin(), reduced.end());
        seen.insert(reduced);
        int q = parties - 1;
        while (q >= 0 && ++words[static_cast<std::size_t>(q)] == limit) words[static_cast<std::size_t>(q--)] = 0;
        if (q < 0) break;
      }
      MultisetRange range(necklaces.size(), parties);
      CHECK(seen.size() == range.total());
    }
  }
}

TEST_CASE("flagship multiset space and its reflection-refined size") {
  auto necklaces = enumerate_necklaces(10);
  auto map = reflection_index_map(necklaces);
  MultisetRange range(necklaces.size(), 4);
  REQUIRE(range.total() == 341055);
  std::uint64_t kept = 0;
  auto cursor = range.unrank(0);
  for (std::uint64_t rank = 0; rank < range.total(); ++rank) {
    if (multiset_is_reflection_canonical(cursor, necklaces, map)) ++kept;
    range.advance(cursor);
  }
  // the looser published refined bound 242873 already sits below the
  // unrefined total; pairing every multiset with its reflection prunes
  // further (fixed points stay), deterministically
  CHECK(242873 <= range.total());
  CHECK(kept <= 242873);
  CHECK(2 * kept >= range.total());
  CHECK(kept == 173775);
}

TEST_CASE("reflection refinement keeps at least one representative per pair") {
  for (int m : {4, 5, 6, 10}) {
    auto necklaces = enumerate_necklaces(m);
    auto map = reflection_index_map(necklaces);
    MultisetRange range(necklaces.size(), 3);
    auto cursor = range.unrank(0);
    std::uint64_t kept = 0;
    for (std::uint64_t rank = 0; rank < range.total(); ++rank) {
      const bool keep = multiset_is_reflection_canonical(cursor, necklaces, map);
      if (!keep) {
        // its reflection must be kept
        std::vector<std::uint32_t> reflected(cursor.size());
        for (std::size_t i = 0; i < cursor.size(); ++i) reflected[i] = map[cursor[i]];
        std::sort(reflected.begin(), reflected.end());
        CHECK(multiset_is_reflection_canonical(reflected, necklaces, map));
      } else {
        ++kept;
      }
      range.advance(cursor);
    }
    CHECK(kept <= range.total());
    CHECK(2 * kept >= range.total());
  }
}
