#pragma once

// Exact rational densities. Balancedness predicates compare densities by
// cross-multiplication; nothing here touches floating point.

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "rdg/bigint.hpp"

namespace rdg {

using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(const BigCount& num, const BigCount& den) {
  if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
  return Rational(num, den);  // cpp_rational normalizes sign and reduces
}

inline Rational make_rational(long long num, long long den) {
  return make_rational(BigCount(num), BigCount(den));
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace rdg
