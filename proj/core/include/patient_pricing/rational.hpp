#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace patient_pricing {

/// Exact rational number. Always stored in lowest terms with a positive
/// denominator; every comparison in the model is exact.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// Parses "a/b", an integer "n", or a finite decimal "0.25" (converted via
/// its exact decimal expansion). Throws ValidationError otherwise.
Rational parse_rational(std::string_view text);

/// Lowest-terms rendering: integers as "n", everything else as "num/den".
std::string format_rational(const Rational& q);

/// Decimal rendering with the given number of significant digits, for
/// human-facing summaries only.
std::string format_decimal(double x, int significant_digits = 12);

inline bool in_unit_interval(const Rational& q) { return q >= 0 && q <= 1; }

double to_double(const Rational& q);

}  // namespace patient_pricing
