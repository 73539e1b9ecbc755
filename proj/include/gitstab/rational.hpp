#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace gitstab {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Parses "p" or "p/q" (optional leading minus, q > 0). Throws Error(Schema)
/// on anything else.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, "p" when q = 1.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

}  // namespace gitstab
