#include "symbell/necklaces.hpp"

#include <algorithm>
#include <limits>

namespace symbell {

namespace {

int euler_phi(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

}  // namespace

BigInt necklace_count(int m) {
  if (m < 1) throw std::invalid_argument("necklace_count: need m >= 1");
  BigInt sum = 0;
  for (int d = 1; d <= m; d += 2) {
    if (m % d != 0) continue;
    sum += BigInt(euler_phi(d)) << (m / d);
  }
  if (sum % (2 * m) != 0) throw std::logic_error("necklace_count: sum not divisible by 2m");
  return sum / (2 * m);
}

Necklace canonical_necklace(const Strategy& s) {
  Strategy best = s;
  std::uint32_t best_key = s.lex_key();
  Strategy cur = s;
  const int two_m = 2 * s.size();
  for (int k = 0; k < two_m; ++k) {
    cur = cur.shifted();
    const std::uint32_t key = cur.lex_key();
    if (key < best_key) {
      best_key = key;
      best = cur;
    }
  }
  return Necklace{best};
}

std::vector<Necklace> enumerate_necklaces(int m, int cap) {
  if (m < 1) throw std::invalid_argument("enumerate_necklaces: need m >= 1");
  if (m > cap) throw BudgetExceeded("enumerate_necklaces: m exceeds cap");
  std::vector<Necklace> out;
  const std::uint32_t limit = (m >= 32) ? 0 : (1u << m);
  for (std::uint32_t word = 0; word < limit; ++word) {
    Strategy s(m, word);
    Necklace c = canonical_necklace(s);
    if (c.rep == s) out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Necklace reflected_necklace(const Necklace& n) { return canonical_necklace(n.rep.reflected()); }

MultisetRange::MultisetRange(std::uint64_t alphabet, int tuple_len, std::uint64_t budget)
    : alphabet_(alphabet), tuple_len_(tuple_len) {
  if (alphabet == 0 || tuple_len < 1)
    throw std::invalid_argument("MultisetRange: need alphabet >= 1 and tuple_len >= 1");
  total_ = count(alphabet, tuple_len);
  if (total_ > budget) throw BudgetExceeded("MultisetRange: tuple count exceeds budget");
}

std::uint64_t MultisetRange::count(std::uint64_t alphabet, int tuple_len) {
  // C(alphabet + k - 1, k) with saturation.
  unsigned __int128 acc = 1;
  const std::uint64_t n = alphabet + static_cast<std::uint64_t>(tuple_len) - 1;
  for (int i = 1; i <= tuple_len; ++i) {
    acc = acc * (n - static_cast<std::uint64_t>(tuple_len) + static_cast<std::uint64_t>(i));
    acc /= static_cast<unsigned>(i);
    if (acc > std::numeric_limits<std::uint64_t>::max())
      return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(acc);
}

std::vector<std::uint32_t> MultisetRange::unrank(std::uint64_t rank) const {
  if (rank >= total_) throw std::out_of_range("MultisetRange: rank out of range");
  std::vector<std::uint32_t> tuple(static_cast<std::size_t>(tuple_len_));
  std::uint64_t lo = 0;  // current minimum value
  for (int pos = 0; pos < tuple_len_; ++pos) {
    const int rest = tuple_len_ - pos - 1;
    std::uint64_t v = lo;
    while (true) {
      // tuples with this position fixed to v: values >= v for the rest
      const std::uint64_t block = count(alphabet_ - v, rest);
      if (rank < block) break;
      rank -= block;
      ++v;
    }
    tuple[static_cast<std::size_t>(pos)] = static_cast<std::uint32_t>(v);
    lo = v;
  }
  return tuple;
}

int MultisetRange::advance(std::vector<std::uint32_t>& tuple) const {
  for (int pos = tuple_len_ - 1; pos >= 0; --pos) {
    if (tuple[static_cast<std::size_t>(pos)] + 1 < alphabet_) {
      const std::uint32_t v = tuple[static_cast<std::size_t>(pos)] + 1;
      for (int q = pos; q < tuple_len_; ++q) tuple[static_cast<std::size_t>(q)] = v;
      return pos;
    }
  }
  return -1;
}

std::vector<std::uint32_t> reflection_index_map(const std::vector<Necklace>& necklaces) {
  std::vector<std::uint32_t> map(necklaces.size());
  for (std::size_t i = 0; i < necklaces.size(); ++i) {
    Necklace r = reflected_necklace(necklaces[i]);
    auto it = std::lower_bound(necklaces.begin(), necklaces.end(), r);
    if (it == necklaces.end() || !(*it == r))
      throw std::logic_error("reflection_index_map: reflected necklace missing");
    map[i] = static_cast<std::uint32_t>(it - necklaces.begin());
  }
  return map;
}

bool multiset_is_reflection_canonical(const std::vector<std::uint32_t>& tuple,
                                      const std::vector<Necklace>& necklaces,
                                      const std::vector<std::uint32_t>& reflection_map) {
  (void)necklaces;
  std::vector<std::uint32_t> reflected(tuple.size());
  for (std::size_t i = 0; i < tuple.size(); ++i) reflected[i] = reflection_map[tuple[i]];
  std::sort(reflected.begin(), reflected.end());
  return !std::lexicographical_compare(reflected.begin(), reflected.end(), tuple.begin(), tuple.end());
}

}  // namespace symbell
