#pragma once

// Exact integer arithmetic for embedding counts. Products of binomial
// coefficients reach ~2^(kn), far past 64 bits, so counts live in an
// arbitrary-precision integer and only drop to double for reporting.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace rdg {

using BigCount = boost::multiprecision::cpp_int;

namespace detail {

inline constexpr int kMaxBinomialRow = 64;

inline const std::vector<std::vector<BigCount>>& pascal_table() {
  static const std::vector<std::vector<BigCount>> table = [] {
    std::vector<std::vector<BigCount>> t(kMaxBinomialRow + 1);
    for (int n = 0; n <= kMaxBinomialRow; ++n) {
      t[n].resize(n + 1);
      t[n][0] = 1;
      t[n][n] = 1;
      for (int k = 1; k < n; ++k) t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
    }
    return t;
  }();
  return table;
}

}  // namespace detail

// C(n, k) from a Pascal-triangle cache, n <= 64. Out-of-range k gives 0.
inline const BigCount& binomial(int n, int k) {
  static const BigCount zero = 0;
  if (n < 0 || n > detail::kMaxBinomialRow)
    throw std::invalid_argument("binomial: row out of cached range [0,64]");
  if (k < 0 || k > n) return zero;
  return detail::pascal_table()[n][k];
}

// All cached rows fit in 64 bits (C(64,32) < 2^63).
inline std::uint64_t binomial_u64(int n, int k) {
  return binomial(n, k).convert_to<std::uint64_t>();
}

inline BigCount bigcount_pow(BigCount base, unsigned exp) {
  BigCount r = 1;
  while (exp) {
    if (exp & 1u) r *= base;
    base *= base;
    exp >>= 1u;
  }
  return r;
}

inline BigCount bigcount_from_u128(unsigned __int128 v) {
  BigCount hi = static_cast<std::uint64_t>(v >> 64);
  BigCount lo = static_cast<std::uint64_t>(v);
  return (hi << 64) | lo;
}

}  // namespace rdg
