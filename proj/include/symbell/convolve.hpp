#ifndef SYMBELL_CONVOLVE_HPP
#define SYMBELL_CONVOLVE_HPP

#include <cstdint>
#include <vector>

#include "symbell/scenario.hpp"
#include "symbell/symcorr.hpp"

namespace symbell {

// Z_2m group-algebra contraction. A party's strategy acts on the signed
// counts c by c'[t] = sum_x s_x c[(t - x) mod 2m]; after convolving k
// parties, sum_t |c[t]| <= m^k. This is what lets every kernel run in
// O(m^2) per party instead of touching an m^N tensor.

template <typename Int>
struct ConvolutionState {
  int two_m = 0;
  std::vector<Int> counts;

  static ConvolutionState neutral(int m) {
    ConvolutionState s;
    s.two_m = 2 * m;
    s.counts.assign(static_cast<std::size_t>(2 * m), Int(0));
    s.counts[0] = Int(1);
    return s;
  }
};

template <typename Int>
void convolve_party_into(ConvolutionState<Int>& dst, const ConvolutionState<Int>& src,
                         const Strategy& s) {
  const int two_m = src.two_m;
  const int m = two_m / 2;
  dst.two_m = two_m;
  dst.counts.assign(static_cast<std::size_t>(two_m), Int(0));
  for (int x = 0; x < m; ++x) {
    const int sx = s.sign(x);
    if (sx > 0) {
      for (int t = 0; t < two_m; ++t) {
        int u = t + x;
        if (u >= two_m) u -= two_m;
        dst.counts[static_cast<std::size_t>(u)] += src.counts[static_cast<std::size_t>(t)];
      }
    } else {
      for (int t = 0; t < two_m; ++t) {
        int u = t + x;
        if (u >= two_m) u -= two_m;
        dst.counts[static_cast<std::size_t>(u)] -= src.counts[static_cast<std::size_t>(t)];
      }
    }
  }
}

template <typename Int>
ConvolutionState<Int> convolve_party(const ConvolutionState<Int>& state, const Strategy& s) {
  ConvolutionState<Int> out;
  convolve_party_into(out, state, s);
  return out;
}

/// Outcome of optimizing the last party against a partial contraction:
/// score = sum_y |value(y)|, last_y = sign(value(y)) with sign(0) = +1.
/// Inputs where value(y) = 0 are flagged; flipping the last party there
/// leaves the score unchanged (used to enumerate saturating vertices).
template <typename Int>
struct LastPartyScore {
  Int score;
  Strategy last;
  std::uint32_t zero_inputs = 0;  // bitmask over [0, m)
};

template <typename Int>
LastPartyScore<Int> score_with_last_party(const AntiperiodicProfile<Int>& profile,
                                          const ConvolutionState<Int>& state) {
  const int two_m = state.two_m;
  const int m = two_m / 2;
  LastPartyScore<Int> out{Int(0), Strategy(m, 0), 0};
  std::uint32_t word = 0;
  for (int y = 0; y < m; ++y) {
    Int acc(0);
    for (int t = 0; t < two_m; ++t) {
      int u = t + y;
      if (u >= two_m) u -= two_m;
      acc += state.counts[static_cast<std::size_t>(t)] * profile.f[static_cast<std::size_t>(u)];
    }
    if (acc > 0) {
      word |= 1u << y;
      out.score += acc;
    } else if (acc < 0) {
      out.score -= acc;
    } else {
      word |= 1u << y;  // sign(0) = +1
      out.zero_inputs |= 1u << y;
    }
  }
  out.last = Strategy(m, word);
  return out;
}

/// Full Bell value of a complete strategy tuple against a profile:
/// sum_t c[t] F[t] after convolving all N parties.
template <typename Int>
Int profile_value(const AntiperiodicProfile<Int>& profile, const ConvolutionState<Int>& state) {
  Int acc(0);
  for (int t = 0; t < state.two_m; ++t)
    acc += state.counts[static_cast<std::size_t>(t)] * profile.f[static_cast<std::size_t>(t)];
  return acc;
}

}  // namespace symbell

#endif  // SYMBELL_CONVOLVE_HPP
