#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace algstoch {

using Rational = boost::multiprecision::cpp_rational;

/// Parses "p", "p/q", or a finite decimal such as "-0.125" exactly.
Rational parse_rational(std::string_view text);

/// Canonical "p" or "p/q" form with q > 0 and gcd(p, q) = 1.
std::string to_string(const Rational& value);

/// Exact decimal expansion when the denominator has only factors 2 and 5,
/// otherwise the shortest round-trip form of the nearest double.
std::string to_decimal_string(const Rational& value);

/// Shortest representation that parses back to the same double.
std::string format_double(double value);

double to_double(const Rational& value);

}  // namespace algstoch
