#pragma once

#include <stdexcept>
#include <string>

#include "fillinglab/rational.hpp"

namespace fillinglab {

// Two elements live in different real quadratic fields.
struct field_mismatch_error : std::domain_error {
  using std::domain_error::domain_error;
};

// The discriminant of a quadratic number must not be a perfect square.
struct square_discriminant_error : std::domain_error {
  using std::domain_error::domain_error;
};

// min_power_exceeding requires a base > 1.
struct non_expanding_error : std::domain_error {
  using std::domain_error::domain_error;
};

// Exact element p + q*sqrt(d) of Q(sqrt(d)), d a positive non-square integer.
// Canonical form: q == 0 implies d == 0, so pure rationals compare structurally
// across fields. Mixed-field arithmetic (both q parts nonzero, different d) is
// rejected, never coerced.
class QuadraticNumber {
 public:
  QuadraticNumber() : d_(0) {}
  QuadraticNumber(Rational p) : p_(std::move(p)), d_(0) { p_.canonicalize(); }
  QuadraticNumber(long p) : p_(p), d_(0) {}
  QuadraticNumber(Rational p, Rational q, Integer d);

  const Rational& rational_part() const { return p_; }
  const Rational& radical_part() const { return q_; }
  const Integer& discriminant() const { return d_; }

  bool is_rational() const { return q_ == 0; }

  // Exact sign in {-1, 0, +1}; no floating point involved.
  int sign() const;

  QuadraticNumber operator-() const;
  QuadraticNumber& operator+=(const QuadraticNumber& o);
  QuadraticNumber& operator-=(const QuadraticNumber& o);
  QuadraticNumber& operator*=(const QuadraticNumber& o);
  QuadraticNumber& operator/=(const QuadraticNumber& o);

  friend QuadraticNumber operator+(QuadraticNumber a, const QuadraticNumber& b) {
    return a += b;
  }
  friend QuadraticNumber operator-(QuadraticNumber a, const QuadraticNumber& b) {
    return a -= b;
  }
  friend QuadraticNumber operator*(QuadraticNumber a, const QuadraticNumber& b) {
    return a *= b;
  }
  friend QuadraticNumber operator/(QuadraticNumber a, const QuadraticNumber& b) {
    return a /= b;
  }

  // 1/x; throws std::domain_error on zero.
  QuadraticNumber inverse() const;

  QuadraticNumber abs() const { return sign() < 0 ? -*this : *this; }

  // x^m for m >= 0.
  QuadraticNumber pow(unsigned long m) const;

  friend bool operator==(const QuadraticNumber& a, const QuadraticNumber& b) {
    return a.p_ == b.p_ && a.q_ == b.q_ && a.d_ == b.d_;
  }
  friend bool operator!=(const QuadraticNumber& a, const QuadraticNumber& b) {
    return !(a == b);
  }

  // Canonical text form "p/q" or "p/q+r/s*sqrt(d)" / "p/q-r/s*sqrt(d)".
  std::string str() const;
  static QuadraticNumber parse(const std::string& text);

  // Inexact value, for search heuristics and diagnostics only.
  double approx() const;

 private:
  // Fields are only merged when at least one side is purely rational.
  static Integer merged_discriminant(const QuadraticNumber& a,
                                     const QuadraticNumber& b);
  void normalize();

  Rational p_;
  Rational q_;
  Integer d_;
};

// Exact three-way comparison; total order on a common field.
int compare(const QuadraticNumber& a, const QuadraticNumber& b);

inline bool operator<(const QuadraticNumber& a, const QuadraticNumber& b) {
  return compare(a, b) < 0;
}
inline bool operator<=(const QuadraticNumber& a, const QuadraticNumber& b) {
  return compare(a, b) <= 0;
}
inline bool operator>(const QuadraticNumber& a, const QuadraticNumber& b) {
  return compare(a, b) > 0;
}
inline bool operator>=(const QuadraticNumber& a, const QuadraticNumber& b) {
  return compare(a, b) >= 0;
}

// Least m >= 1 with x^m > bound, decided exactly. Requires x > 1 (else
// non_expanding_error) and bound > 0 (else std::domain_error).
unsigned long min_power_exceeding(const QuadraticNumber& x,
                                  const QuadraticNumber& bound);

}  // namespace fillinglab
