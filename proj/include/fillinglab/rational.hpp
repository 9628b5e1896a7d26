#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace fillinglab {

using Integer = mpz_class;
using Rational = mpq_class;

// Canonical "p/q" text form, q > 0, lowest terms. Always emits the slash.
std::string rat_to_string(const Rational& r);

// Accepts "p/q", "p" (meaning p/1), optional leading '-'/'+'. Throws
// std::invalid_argument on malformed input or zero denominator.
Rational rat_from_string(const std::string& s);

inline int sign(const Rational& r) { return sgn(r); }
inline int sign(const Integer& z) { return sgn(z); }

// mpq_class(num, den) keeps common factors, and mpq equality is structural,
// so every fraction built from a num/den pair must reduce immediately.
inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace fillinglab
