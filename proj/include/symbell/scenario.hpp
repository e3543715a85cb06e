#ifndef SYMBELL_SCENARIO_HPP
#define SYMBELL_SCENARIO_HPP

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace symbell {

/// Bell scenario: N parties, m inputs per party, +-1 outputs, full
/// correlators only. The reduced (symmetry-adapted) dimension ceil(m/2)
/// is always derived from m, never stored.
struct ScenarioParams {
  int n_parties = 0;  // N
  int n_inputs = 0;   // m

  ScenarioParams() = default;
  ScenarioParams(int n, int m) : n_parties(n), n_inputs(m) { validate(); }

  void validate() const {
    if (n_parties < 2) throw std::invalid_argument("ScenarioParams: need N >= 2");
    if (n_inputs < 2) throw std::invalid_argument("ScenarioParams: need m >= 2");
    if (n_inputs > 31) throw std::invalid_argument("ScenarioParams: m > 31 unsupported");
  }

  int reduced_dim() const { return (n_inputs + 1) / 2; }

  bool operator==(const ScenarioParams&) const = default;
};

/// One party's deterministic assignment of +-1 to each of the m inputs,
/// packed into an m-bit word (bit x set means input x answers +1).
class Strategy {
 public:
  Strategy() = default;
  Strategy(int m, std::uint32_t word) : m_(m), word_(word & mask(m)) {
    if (m < 1 || m > 31) throw std::invalid_argument("Strategy: bad length");
  }

  static Strategy all_minus(int m) { return Strategy(m, 0); }
  static Strategy all_plus(int m) { return Strategy(m, mask(m)); }

  static Strategy from_signs(const std::vector<int>& signs) {
    Strategy s(static_cast<int>(signs.size()), 0);
    for (std::size_t x = 0; x < signs.size(); ++x) {
      if (signs[x] != 1 && signs[x] != -1)
        throw std::invalid_argument("Strategy: signs must be +-1");
      if (signs[x] > 0) s.word_ |= 1u << x;
    }
    return s;
  }

  /// Parses strings like "+--+" or "-+-".
  static Strategy from_string(const std::string& text) {
    Strategy s(static_cast<int>(text.size()), 0);
    for (std::size_t x = 0; x < text.size(); ++x) {
      if (text[x] == '+')
        s.word_ |= 1u << x;
      else if (text[x] != '-')
        throw std::invalid_argument("Strategy: expected '+' or '-'");
    }
    return s;
  }

  int size() const { return m_; }
  std::uint32_t word() const { return word_; }

  int sign(int x) const { return (word_ >> x) & 1u ? +1 : -1; }

  /// One signed cyclic step: entry x takes the old entry x+1, the entry
  /// that wraps around re-enters negated.
  Strategy shifted() const {
    std::uint32_t w = word_ >> 1;
    if (!(word_ & 1u)) w |= 1u << (m_ - 1);
    return Strategy(m_, w);
  }

  Strategy negated() const { return Strategy(m_, ~word_ & mask(m_)); }

  /// Reflection x -> -x on inputs (the g4-style symmetry): entry 0 is kept,
  /// entry x becomes the negated entry m-x.
  Strategy reflected() const {
    Strategy out(m_, 0);
    if (sign(0) > 0) out.word_ |= 1u;
    for (int x = 1; x < m_; ++x)
      if (sign(m_ - x) < 0) out.word_ |= 1u << x;
    return out;
  }

  /// Integer key whose natural order equals lexicographic order of the
  /// sign sequence (s_0 first) with -1 < +1.
  std::uint32_t lex_key() const {
    std::uint32_t key = 0;
    for (int x = 0; x < m_; ++x)
      if ((word_ >> x) & 1u) key |= 1u << (m_ - 1 - x);
    return key;
  }

  std::string to_string() const {
    std::string out(static_cast<std::size_t>(m_), '-');
    for (int x = 0; x < m_; ++x)
      if ((word_ >> x) & 1u) out[x] = '+';
    return out;
  }

  bool operator==(const Strategy&) const = default;

  friend std::strong_ordering operator<=>(const Strategy& a, const Strategy& b) {
    if (auto c = a.m_ <=> b.m_; c != 0) return c;
    return a.lex_key() <=> b.lex_key();
  }

 private:
  static std::uint32_t mask(int m) { return (m >= 32) ? ~0u : ((1u << m) - 1u); }

  int m_ = 0;
  std::uint32_t word_ = 0;
};

/// An N-tuple of per-party strategies (a deterministic strategy of the
/// full scenario).
using StrategyTuple = std::vector<Strategy>;

}  // namespace symbell

#endif  // SYMBELL_SCENARIO_HPP
