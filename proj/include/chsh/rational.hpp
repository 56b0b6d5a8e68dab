#pragma once

#include <cmath>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace chsh {

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
using Rational = boost::multiprecision::cpp_rational;

/// Serializes as "num/den", e.g. "-1/8", "0/1".
std::string to_string(const Rational& value);

/// Parses "num/den" or a bare integer.
Rational parse_rational(const std::string& text);

inline double to_double(const Rational& value) { return value.convert_to<double>(); }
inline double to_double(double value) { return value; }

/// Scalar helpers shared by the exact and floating code paths.
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool kExact = true;
  static Rational abs(const Rational& x) { return boost::multiprecision::abs(x); }
  static bool is_zero(const Rational& x, double /*tolerance*/ = 0.0) { return x == 0; }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool kExact = false;
  static double abs(double x) { return std::fabs(x); }
  static bool is_zero(double x, double tolerance) { return std::fabs(x) <= tolerance; }
};

}  // namespace chsh
