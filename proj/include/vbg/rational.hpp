#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace vbg {

/// Exact rational scalar. GMP keeps the value canonical (gcd 1, positive
/// denominator) after every arithmetic operation.
using Rational = mpq_class;

/// "p/q", with "/q" omitted when q == 1. Zero is "0".
std::string to_string(const Rational& q);

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed
/// input or a zero denominator.
Rational parse_rational(std::string_view text);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

}  // namespace vbg
