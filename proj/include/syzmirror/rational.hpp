#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace syzmirror {

// Arbitrary-precision rationals. gmpxx keeps results of arithmetic canonical
// (positive denominator, coprime parts); values built from strings are
// canonicalized by parse_rational.
using Rational = mpq_class;
using Integer = mpz_class;

// Accepts "p", "-p", "p/q"; the denominator must be nonzero.
Rational parse_rational(std::string_view text);

// "p" when the denominator is one, "p/q" otherwise.
std::string to_string(const Rational &value);

// num/den in canonical form; mpq_class(num, den) alone leaves it unreduced.
Rational make_rational(long num, long den);

Integer factorial(unsigned long n);

inline bool is_integer(const Rational &value) { return value.get_den() == 1; }

} // namespace syzmirror
