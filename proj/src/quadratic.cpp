#include "fillinglab/quadratic.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

namespace fillinglab {

std::string rat_to_string(const Rational& r) {
  Rational c(r);
  c.canonicalize();
  std::ostringstream os;
  os << c.get_num() << "/" << c.get_den();
  return os.str();
}

Rational rat_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  std::string num = s, den = "1";
  if (auto slash = s.find('/'); slash != std::string::npos) {
    num = s.substr(0, slash);
    den = s.substr(slash + 1);
  }
  auto is_int = [](const std::string& t) {
    if (t.empty()) return false;
    size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  if (!is_int(num) || !is_int(den))
    throw std::invalid_argument("malformed rational literal: " + s);
  Integer n(num), d(den);
  if (d == 0) throw std::invalid_argument("zero denominator: " + s);
  Rational r(n, d);
  r.canonicalize();
  return r;
}

QuadraticNumber::QuadraticNumber(Rational p, Rational q, Integer d)
    : p_(std::move(p)), q_(std::move(q)), d_(std::move(d)) {
  p_.canonicalize();
  q_.canonicalize();
  if (q_ != 0) {
    if (d_ <= 0) throw square_discriminant_error("discriminant must be positive");
    if (mpz_perfect_square_p(d_.get_mpz_t()))
      throw square_discriminant_error("discriminant is a perfect square: " +
                                      d_.get_str());
  }
  normalize();
}

void QuadraticNumber::normalize() {
  if (q_ == 0) d_ = 0;
}

Integer QuadraticNumber::merged_discriminant(const QuadraticNumber& a,
                                             const QuadraticNumber& b) {
  if (a.q_ == 0) return b.d_;
  if (b.q_ == 0) return a.d_;
  if (a.d_ != b.d_)
    throw field_mismatch_error("mixed quadratic fields: sqrt(" + a.d_.get_str() +
                               ") vs sqrt(" + b.d_.get_str() + ")");
  return a.d_;
}

int QuadraticNumber::sign() const {
  const int sp = sgn(p_);
  const int sq = sgn(q_);
  if (sq == 0) return sp;
  if (sp == 0) return sq;
  if (sp == sq) return sp;
  // Opposite signs: compare p^2 against q^2 d. d non-square, so never equal.
  Rational lhs = p_ * p_;
  Rational rhs = q_ * q_ * Rational(d_);
  const int c = cmp(lhs, rhs);
  return sp > 0 ? (c > 0 ? 1 : -1) : (c > 0 ? -1 : 1);
}

QuadraticNumber QuadraticNumber::operator-() const {
  QuadraticNumber r(*this);
  r.p_ = -r.p_;
  r.q_ = -r.q_;
  return r;
}

QuadraticNumber& QuadraticNumber::operator+=(const QuadraticNumber& o) {
  d_ = merged_discriminant(*this, o);
  p_ += o.p_;
  q_ += o.q_;
  normalize();
  return *this;
}

QuadraticNumber& QuadraticNumber::operator-=(const QuadraticNumber& o) {
  d_ = merged_discriminant(*this, o);
  p_ -= o.p_;
  q_ -= o.q_;
  normalize();
  return *this;
}

QuadraticNumber& QuadraticNumber::operator*=(const QuadraticNumber& o) {
  const Integer d = merged_discriminant(*this, o);
  Rational p = p_ * o.p_ + q_ * o.q_ * Rational(d);
  Rational q = p_ * o.q_ + q_ * o.p_;
  p_ = std::move(p);
  q_ = std::move(q);
  d_ = d;
  normalize();
  return *this;
}

QuadraticNumber QuadraticNumber::inverse() const {
  if (p_ == 0 && q_ == 0) throw std::domain_error("division by zero");
  // 1/(p+q sqrt d) = (p - q sqrt d) / (p^2 - q^2 d); the norm is nonzero
  // because d is not a square.
  Rational norm = p_ * p_ - q_ * q_ * Rational(d_);
  QuadraticNumber r(*this);
  r.p_ = p_ / norm;
  r.q_ = -q_ / norm;
  r.normalize();
  return r;
}

QuadraticNumber& QuadraticNumber::operator/=(const QuadraticNumber& o) {
  return *this *= o.inverse();
}

QuadraticNumber QuadraticNumber::pow(unsigned long m) const {
  QuadraticNumber acc(Rational(1));
  QuadraticNumber base(*this);
  while (m > 0) {
    if (m & 1) acc *= base;
    base *= base;
    m >>= 1;
  }
  return acc;
}

int compare(const QuadraticNumber& a, const QuadraticNumber& b) {
  if (!a.is_rational() && !b.is_rational() &&
      a.discriminant() != b.discriminant())
    throw field_mismatch_error("compare across quadratic fields");
  return (a - b).sign();
}

std::string QuadraticNumber::str() const {
  std::string out = rat_to_string(p_);
  if (q_ != 0) {
    Rational aq = q_ < 0 ? Rational(-q_) : q_;
    out += (q_ < 0 ? "-" : "+");
    out += rat_to_string(aq) + "*sqrt(" + d_.get_str() + ")";
  }
  return out;
}

QuadraticNumber QuadraticNumber::parse(const std::string& text) {
  auto sq = text.find("*sqrt(");
  if (sq == std::string::npos) return QuadraticNumber(rat_from_string(text));
  if (text.back() != ')') throw std::invalid_argument("malformed number: " + text);
  std::string dstr = text.substr(sq + 6, text.size() - sq - 7);
  // Split p from r at the sign separating the two terms. The rational part
  // ends right before the last '+' or '-' that is not the leading sign of p.
  std::string head = text.substr(0, sq);
  size_t sep = std::string::npos;
  for (size_t i = head.size(); i-- > 1;) {
    if (head[i] == '+' || head[i] == '-') {
      sep = i;
      break;
    }
  }
  if (sep == std::string::npos)
    throw std::invalid_argument("malformed number: " + text);
  Rational p = rat_from_string(head.substr(0, sep));
  Rational r = rat_from_string(head.substr(sep + 1));
  if (head[sep] == '-') r = -r;
  return QuadraticNumber(p, r, Integer(dstr));
}

double QuadraticNumber::approx() const {
  double v = p_.get_d();
  if (q_ != 0) v += q_.get_d() * std::sqrt(d_.get_d());
  return v;
}

unsigned long min_power_exceeding(const QuadraticNumber& x,
                                  const QuadraticNumber& bound) {
  if (compare(x, QuadraticNumber(Rational(1))) <= 0)
    throw non_expanding_error("base must exceed 1: " + x.str());
  if (bound.sign() <= 0)
    throw std::domain_error("bound must be positive: " + bound.str());
  QuadraticNumber power(x);
  unsigned long m = 1;
  while (compare(power, bound) <= 0) {
    power *= x;
    ++m;
  }
  return m;
}

}  // namespace fillinglab
