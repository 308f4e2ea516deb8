#pragma once

#include <gmpxx.h>

#include <string>

namespace kstar {

/// Exact rational scalar. All arithmetic in the library is over Q;
/// nothing is ever rounded.
using Rational = mpq_class;

/// Parses a decimal-free fraction string: "p", "-p", "p/q".
/// Throws ParseError on anything else (decimals, empty, zero denominator).
Rational rational_from_string(const std::string& text);

/// Canonical rendering, inverse of rational_from_string ("p" when q == 1).
std::string rational_to_string(const Rational& value);

/// Canonicalized fraction. The two-argument mpq_class constructor does
/// not reduce; use this whenever numerator/denominator are arbitrary.
inline Rational make_rational(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// n! as an exact rational.
Rational factorial(unsigned n);

/// Product of factorials of a multi-exponent, alpha! = prod_i alpha_i!.
template <typename Seq>
Rational multi_factorial(const Seq& alpha) {
  Rational out(1);
  for (auto e : alpha) out *= factorial(static_cast<unsigned>(e));
  return out;
}

}  // namespace kstar
