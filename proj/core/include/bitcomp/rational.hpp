#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <string>

namespace bitcomp {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// Decimal rendering of an exact rational, correctly rounded (half away from
// zero) to `digits` places after the decimal point.
std::string to_decimal_string(const Rational& r, int digits);

// Exact binomial coefficient C(n, k).
BigInt binomial(unsigned long n, unsigned long k);

// Parse "p/q" or "p" into an exact rational.
Rational parse_rational(const std::string& text);

} // namespace bitcomp
