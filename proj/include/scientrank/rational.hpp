#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace scientrank {

/// Exact arbitrary-precision rational. All threshold, weight and mean
/// arithmetic goes through this type; doubles appear only in correlations.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Parses integers ("12", "-3"), plain decimals ("0.10") and fractions
/// ("37/3"). Exponent notation is rejected. Throws DataError on bad input.
Rational parse_rational(std::string_view text);

/// "297" for integers, "37/3" otherwise. Inverse of parse_rational.
std::string to_exact_string(const Rational& value);

/// Round half-up (toward +infinity on an exact .5) to `decimals` places and
/// render with the given separator. Always emits exactly `decimals` digits.
std::string to_fixed(const Rational& value, int decimals, char separator = '.');

double to_double(const Rational& value);

bool is_integer(const Rational& value);

}  // namespace scientrank
