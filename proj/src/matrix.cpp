#include "fillinglab/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace fillinglab {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::elementary(int n, int i, int j, long v) {
  if (i < 1 || i > n || j < 1 || j > n)
    throw std::invalid_argument("elementary matrix index out of range");
  if (i == j) throw std::invalid_argument("elementary matrix needs i != j");
  IntMatrix m = identity(n);
  m.at(i - 1, j - 1) = v;
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (n_ != o.n_) throw std::invalid_argument("dimension mismatch");
  IntMatrix r(n_);
  for (int i = 0; i < n_; ++i)
    for (int l = 0; l < n_; ++l) {
      const Integer& x = at(i, l);
      if (x == 0) continue;
      for (int j = 0; j < n_; ++j) r.at(i, j) += x * o.at(l, j);
    }
  return r;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix r(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r.at(j, i) = at(i, j);
  return r;
}

Integer IntMatrix::det() const {
  // Bareiss: stays integral throughout, pivots tracked with sign.
  IntMatrix w(*this);
  Integer prev(1);
  int sign = 1;
  for (int p = 0; p < n_ - 1; ++p) {
    if (w.at(p, p) == 0) {
      int swap = -1;
      for (int r = p + 1; r < n_; ++r)
        if (w.at(r, p) != 0) {
          swap = r;
          break;
        }
      if (swap < 0) return Integer(0);
      for (int c = 0; c < n_; ++c) std::swap(w.at(p, c), w.at(swap, c));
      sign = -sign;
    }
    for (int r = p + 1; r < n_; ++r)
      for (int c = p + 1; c < n_; ++c) {
        Integer num = w.at(r, c) * w.at(p, p) - w.at(r, p) * w.at(p, c);
        w.at(r, c) = num / prev;  // Exact by Bareiss invariant.
      }
    prev = w.at(p, p);
  }
  return sign > 0 ? w.at(n_ - 1, n_ - 1) : Integer(-w.at(n_ - 1, n_ - 1));
}

IntMatrix IntMatrix::inverse_unimodular() const {
  Integer dt = det();
  if (dt != 1 && dt != -1)
    throw std::domain_error("matrix is not unimodular, det = " + dt.get_str());
  // Rational Gauss-Jordan; entries of the result are integers since det=+-1.
  const int n = n_;
  std::vector<std::vector<Rational>> w(n, std::vector<Rational>(2 * n, Rational(0)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) w[i][j] = Rational(at(i, j));
    w[i][n + i] = 1;
  }
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (w[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::domain_error("singular matrix");
    std::swap(w[col], w[piv]);
    Rational inv = 1 / w[col][col];
    for (int c = 0; c < 2 * n; ++c) w[col][c] *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == col || w[r][col] == 0) continue;
      Rational f = w[r][col];
      for (int c = 0; c < 2 * n; ++c) w[r][c] -= f * w[col][c];
    }
  }
  IntMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rational v = w[i][n + j];
      v.canonicalize();
      if (v.get_den() != 1)
        throw std::logic_error("unimodular inverse must be integral");
      out.at(i, j) = v.get_num();
    }
  return out;
}

IntMatrix IntMatrix::pow(long m) const {
  IntMatrix base = m < 0 ? inverse_unimodular() : *this;
  unsigned long e = m < 0 ? static_cast<unsigned long>(-m)
                          : static_cast<unsigned long>(m);
  IntMatrix acc = identity(n_);
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

IntMatrix IntMatrix::projective_normal_form() const {
  for (const Integer& v : a_) {
    if (v > 0) return *this;
    if (v < 0) {
      IntMatrix r(n_);
      for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = -a_[i];
      return r;
    }
  }
  return *this;
}

std::vector<QuadraticNumber> IntMatrix::apply(
    const std::vector<QuadraticNumber>& x) const {
  if (static_cast<int>(x.size()) != n_)
    throw std::invalid_argument("vector dimension mismatch");
  std::vector<QuadraticNumber> y(x.size());
  for (int i = 0; i < n_; ++i) {
    QuadraticNumber acc;
    for (int j = 0; j < n_; ++j)
      acc += QuadraticNumber(Rational(at(i, j))) * x[j];
    y[i] = acc;
  }
  return y;
}

std::vector<Rational> IntMatrix::apply(const std::vector<Rational>& x) const {
  if (static_cast<int>(x.size()) != n_)
    throw std::invalid_argument("vector dimension mismatch");
  std::vector<Rational> y(x.size(), Rational(0));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) y[i] += Rational(at(i, j)) * x[j];
  return y;
}

std::string IntMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < n_; ++i) {
    os << (i ? ",[" : "[");
    for (int j = 0; j < n_; ++j) os << (j ? "," : "") << at(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

std::string IntMatrix::key() const {
  std::ostringstream os;
  for (const Integer& v : a_) os << v << ";";
  return os.str();
}

std::vector<std::vector<Rational>> rational_kernel(
    const std::vector<std::vector<Rational>>& rows, int cols) {
  std::vector<std::vector<Rational>> w = rows;
  const int r = static_cast<int>(w.size());
  std::vector<int> pivot_col;
  int row = 0;
  for (int col = 0; col < cols && row < r; ++col) {
    int piv = -1;
    for (int i = row; i < r; ++i)
      if (w[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(w[row], w[piv]);
    Rational inv = 1 / w[row][col];
    for (int c = 0; c < cols; ++c) w[row][c] *= inv;
    for (int i = 0; i < r; ++i) {
      if (i == row || w[i][col] == 0) continue;
      Rational f = w[i][col];
      for (int c = 0; c < cols; ++c) w[i][c] -= f * w[row][c];
    }
    pivot_col.push_back(col);
    ++row;
  }
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = 1;
    for (size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -w[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Integer> primitive_integer_vector(const std::vector<Rational>& v) {
  Integer lcm(1);
  bool nonzero = false;
  for (const Rational& x : v) {
    if (x == 0) continue;
    nonzero = true;
    Rational c(x);
    c.canonicalize();
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
  }
  if (!nonzero) throw std::invalid_argument("zero vector has no primitive form");
  std::vector<Integer> out;
  out.reserve(v.size());
  Integer gcd(0);
  for (const Rational& x : v) {
    Rational s = x * Rational(lcm);
    s.canonicalize();
    out.push_back(s.get_num());
    mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), out.back().get_mpz_t());
  }
  for (Integer& z : out) z /= gcd;
  for (const Integer& z : out) {
    if (z != 0) {
      if (z < 0)
        for (Integer& y : out) y = -y;
      break;
    }
  }
  return out;
}

}  // namespace fillinglab
