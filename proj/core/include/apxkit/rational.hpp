#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace apx {

// Exact arithmetic for everything produced by combinatorial procedures
// (gadget weights, cut values, path probabilities). Floating point is
// confined to the LP solver and metric instances.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

double to_double(const Rational& r);

// Exact conversion: every finite double is a dyadic rational.
Rational rational_from_double(double x);

// "p" when the denominator is 1, "p/q" otherwise.
std::string format_rational(const Rational& r);

// Accepts "p", "-p", "p/q" and decimal strings like "1.5".
// Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

}  // namespace apx
