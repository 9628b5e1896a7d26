#pragma once

#include <string>
#include <vector>

#include "fillinglab/quadratic.hpp"
#include "fillinglab/rational.hpp"

namespace fillinglab {

// Square integer matrix with exact arithmetic. Group elements here are
// unimodular (det = +-1), so inverses stay integral.
class IntMatrix {
 public:
  IntMatrix() : n_(0) {}
  explicit IntMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n, Integer(0)) {}

  static IntMatrix identity(int n);
  // I + v*E_ij, 1-based indices, i != j.
  static IntMatrix elementary(int n, int i, int j, long v);

  int dim() const { return n_; }
  Integer& at(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
  const Integer& at(int i, int j) const {
    return a_[static_cast<size_t>(i) * n_ + j];
  }

  IntMatrix operator*(const IntMatrix& o) const;
  bool operator==(const IntMatrix& o) const { return n_ == o.n_ && a_ == o.a_; }
  bool operator!=(const IntMatrix& o) const { return !(*this == o); }

  IntMatrix transpose() const;
  Integer det() const;  // Bareiss fraction-free elimination.
  // Exact inverse; throws std::domain_error unless det = +-1.
  IntMatrix inverse_unimodular() const;
  // m may be negative (uses the unimodular inverse).
  IntMatrix pow(long m) const;

  // Sign-canonical representative of {M, -M}; projective actions cannot tell
  // the two apart.
  IntMatrix projective_normal_form() const;

  std::vector<QuadraticNumber> apply(
      const std::vector<QuadraticNumber>& x) const;
  std::vector<Rational> apply(const std::vector<Rational>& x) const;

  std::string str() const;
  std::string key() const;  // Compact dedup key for search tables.

 private:
  int n_;
  std::vector<Integer> a_;
};

// Basis of the right kernel of an r x c rational matrix, deterministic
// (reduced row echelon form; free columns in increasing order, each set to 1).
std::vector<std::vector<Rational>> rational_kernel(
    const std::vector<std::vector<Rational>>& rows, int cols);

// Scales a nonzero rational vector to a primitive integer vector whose first
// nonzero entry is positive.
std::vector<Integer> primitive_integer_vector(const std::vector<Rational>& v);

}  // namespace fillinglab
