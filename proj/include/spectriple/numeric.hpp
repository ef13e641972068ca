#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <string>

namespace spectriple {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline std::string dec(const Int& v) { return v.str(); }

/// Canonical "num/den" form, denominator always present and positive.
inline std::string frac(const Rat& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

inline double to_double(const Rat& q) { return q.convert_to<double>(); }

/// Shortest round-trip decimal for a binary64 value.
inline std::string shortest(double x) {
  char buf[40];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  (void)ec;
  return std::string(buf, p);
}

}  // namespace spectriple
