#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace qkdroute {

// Exact arithmetic for objective values and ratios. Comparisons between
// candidate solutions must never round, so no floating point anywhere in
// this type's API except the explicit presentation helper.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Renders "numerator/denominator", denominator always present ("40/1").
std::string fraction_string(const Rational& value);

// Accepts "a/b" or a bare integer "a" with optional leading minus.
// Throws std::invalid_argument on malformed text or zero denominator.
Rational parse_fraction(const std::string& text);

// Lossy decimal for report fields only; never fed back into comparisons.
double fraction_decimal(const Rational& value);

}  // namespace qkdroute
