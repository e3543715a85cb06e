#include "symbell/numeric.hpp"

#include <algorithm>
#include <cstdio>

namespace symbell {

int rational_rank(RatMatrix a) {
  if (a.empty()) return 0;
  const std::size_t rows = a.size();
  const std::size_t cols = a[0].size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[rank], a[pivot]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (a[r][col] == 0) continue;
      BigRat factor = a[r][col] / a[rank][col];
      for (std::size_t c = col; c < cols; ++c) a[r][c] -= factor * a[rank][c];
    }
    ++rank;
  }
  return static_cast<int>(rank);
}

std::vector<BigRat> rational_solve(RatMatrix a, std::vector<BigRat> b) {
  const std::size_t n = a.size();
  if (n == 0) return {};
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw std::domain_error("rational_solve: singular system");
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      BigRat factor = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
      b[r] -= factor * b[col];
    }
  }
  std::vector<BigRat> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

bool RankTracker::add_row(std::vector<BigRat> row) {
  if (static_cast<int>(row.size()) != dim_)
    throw std::invalid_argument("RankTracker: row dimension mismatch");
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    const int pc = pivot_cols_[k];
    if (row[pc] == 0) continue;
    BigRat factor = row[pc] / basis_[k][pc];
    for (int c = 0; c < dim_; ++c) row[c] -= factor * basis_[k][c];
  }
  int pivot = -1;
  for (int c = 0; c < dim_; ++c) {
    if (row[c] != 0) {
      pivot = c;
      break;
    }
  }
  if (pivot < 0) return false;
  basis_.push_back(std::move(row));
  pivot_cols_.push_back(pivot);
  return true;
}

std::vector<BigInt> primitive_integer_vector(const std::vector<BigRat>& v) {
  BigInt den_lcm = 1;
  for (const auto& x : v) den_lcm = boost::multiprecision::lcm(den_lcm, denominator(x));
  std::vector<BigInt> out(v.size());
  BigInt g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = numerator(v[i]) * (den_lcm / denominator(v[i]));
    g = boost::multiprecision::gcd(g, out[i]);
  }
  if (g == 0) throw std::domain_error("primitive_integer_vector: zero vector");
  for (auto& x : out) x /= g;
  return out;
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return std::string(buf);
}

}  // namespace symbell
