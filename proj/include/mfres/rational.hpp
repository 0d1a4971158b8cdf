#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace mfres {

// Exact rationals. GMP keeps every value canonical: lowest terms, positive
// denominator, zero as 0/1.
using Rational = mpq_class;
using Integer = mpz_class;

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

// Accepts "p", "-p", "p/q". Throws ParseError on anything else or on a zero
// denominator.
Rational parse_rational(std::string_view text);

inline int sign(const Rational& q) { return sgn(q); }

}  // namespace mfres
