#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace conicflow {

/// Arbitrary-precision rational. Every spectral quantity and every classifier
/// inequality goes through this type; doubles only appear in reporting.
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p", "p/q", "-p/q" or a finite decimal such as "2.125" (exactly).
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& r);

double to_double(const Rational& r);

/// The exact rational value of a finite double.
Rational exact_rational(double x);

/// Comma separated list of rationals; empty text gives an empty list.
std::vector<Rational> parse_rational_list(std::string_view text);
std::string to_string(const std::vector<Rational>& values);

}  // namespace conicflow
