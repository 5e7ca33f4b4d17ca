#pragma once

#include <gmpxx.h>

#include <string>

namespace qmf {

using Rational = mpq_class;

// Always "p/q", integers included ("3/1"), sign on the numerator.
std::string to_fraction(const Rational& x);

// Shortest readable form: "3", "-1/2".
std::string to_plain(const Rational& x);

// Accepts "p", "p/q", "-p/q"; throws ParseError.
Rational parse_rational(const std::string& text);

// n/d in canonical form; mpq_class(n, d) alone is not canonicalized.
Rational frac(long n, long d);

bool is_integer(const Rational& x);

Rational floor_of(const Rational& x);

}  // namespace qmf
