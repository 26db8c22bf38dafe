#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace scarfmatch {

/// Exact rational arithmetic is used throughout: capacity tightness is an
/// equality test and must not suffer rounding.
using Rational = boost::multiprecision::cpp_rational;

/// Renders a rational as "p" or "p/q".
std::string to_string(const Rational& value);

/// Parses "p", "-p", or "p/q" with a positive denominator.
std::optional<Rational> parse_rational(const std::string& text);

/// True iff the value has denominator 1.
bool is_integral(const Rational& value);

}  // namespace scarfmatch
