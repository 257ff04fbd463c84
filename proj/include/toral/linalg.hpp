// Exact integer/rational matrix arithmetic, Hermite normal form, kernels and
// lattice saturation.
#pragma once

#include "toral/scalar.hpp"

#include <string>
#include <utility>
#include <vector>

namespace toral {

/// Integer lattice given by a canonical basis: the rows of `rows` are in
/// row-style Hermite normal form (positive pivots, entries above each pivot
/// reduced into [0, pivot)).
struct LatticeBasis {
  IntMatrix rows;

  Eigen::Index rank() const { return rows.rows(); }
  Eigen::Index dimension() const { return rows.cols(); }
  bool contains(const IntVector& v) const;

  friend bool operator==(const LatticeBasis& a, const LatticeBasis& b) {
    return a.rows.rows() == b.rows.rows() && a.rows.cols() == b.rows.cols() &&
           a.rows == b.rows;
  }
};

template <typename Scalar>
Matrix<Scalar> identity(Eigen::Index n) {
  Matrix<Scalar> e = Matrix<Scalar>::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) e(i, i) = Scalar(1);
  return e;
}

template <typename Scalar>
Matrix<Scalar> product(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("product: dimension mismatch (" + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " * " + std::to_string(b.rows()) +
                                "x" + std::to_string(b.cols()) + ")");
  return a * b;
}

template <typename Scalar>
Matrix<Scalar> sum(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("sum: dimension mismatch");
  return a + b;
}

/// A^n by repeated squaring; A must be square.
template <typename Scalar>
Matrix<Scalar> power(const Matrix<Scalar>& a, unsigned long n) {
  if (a.rows() != a.cols()) throw std::invalid_argument("power: matrix is not square");
  Matrix<Scalar> result = identity<Scalar>(a.rows());
  Matrix<Scalar> base = a;
  while (n > 0) {
    if (n & 1UL) result = (result * base).eval();
    n >>= 1;
    if (n > 0) base = (base * base).eval();
  }
  return result;
}

/// Fraction-free (Bareiss) determinant. Every division is exact, so this is
/// valid over the integers as well as over a field.
template <typename Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& a) {
  using S = typename Derived::Scalar;
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant: matrix is not square");
  const Eigen::Index n = a.rows();
  if (n == 0) return S(1);
  Matrix<S> m = a;
  S prev(1);
  bool negate = false;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (m(k, k) == 0) {
      Eigen::Index r = k + 1;
      while (r < n && m(r, k) == 0) ++r;
      if (r == n) return S(0);
      m.row(k).swap(m.row(r));
      negate = !negate;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j)
        m(i, j) = S((m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev);
      m(i, k) = S(0);
    }
    prev = m(k, k);
  }
  return negate ? S(-m(n - 1, n - 1)) : m(n - 1, n - 1);
}

/// Exact inverse over Q. Throws std::domain_error when singular.
RatMatrix inverse(const RatMatrix& a);
RatMatrix inverse(const IntMatrix& a);

bool is_unimodular(const IntMatrix& a);

/// Integer inverse of a unimodular matrix; throws std::domain_error otherwise.
IntMatrix unimodular_inverse(const IntMatrix& a);

RatMatrix to_rational(const IntMatrix& a);

/// Integer matrix from a rational one whose entries are all integers.
IntMatrix to_integer(const RatMatrix& a);

/// Reduced row echelon form over Q; `pivots` receives pivot column indices.
RatMatrix reduced_row_echelon(const RatMatrix& a, std::vector<Eigen::Index>* pivots = nullptr);

Eigen::Index rank(const RatMatrix& a);
Eigen::Index rank(const IntMatrix& a);

struct HermiteForm {
  IntMatrix H;  // same shape as the input; zero rows last
  IntMatrix U;  // unimodular, U * M == H
  Eigen::Index rank = 0;

  LatticeBasis basis() const { return LatticeBasis{H.topRows(rank)}; }
};

/// Row-style Hermite normal form of the rows of `m`.
HermiteForm hermite_normal_form(const IntMatrix& m);

/// Basis of {v : M v = 0} over Q, one vector per free column of the RREF
/// (free coordinate 1, other free coordinates 0). Empty iff the kernel is trivial.
std::vector<RatVector> rational_kernel(const RatMatrix& m);

/// Canonical basis of the full integer kernel {v in Z^n : M v = 0}.
LatticeBasis saturated_integer_kernel(const IntMatrix& m);

/// HNF basis of the lattice spanned by the rows (not saturated).
LatticeBasis lattice_span(const IntMatrix& rows);

/// Saturation of the row span: span_Q(rows) intersected with Z^n.
LatticeBasis saturate(const IntMatrix& rows);

Integer content(const IntVector& v);

/// Scales a rational vector to a primitive integer vector (content 1,
/// same direction). The zero vector maps to zero.
IntVector primitive_integer_vector(const RatVector& v);

/// Stacks vectors as the rows of a matrix; `cols` is used when `vs` is empty.
template <typename Scalar>
Matrix<Scalar> stack_rows(const std::vector<Vector<Scalar>>& vs, Eigen::Index cols) {
  Matrix<Scalar> m(static_cast<Eigen::Index>(vs.size()), cols);
  for (std::size_t i = 0; i < vs.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = vs[i].transpose();
  return m;
}

/// Floor division for big integers (rounds toward negative infinity).
Integer floor_div(const Integer& a, const Integer& b);

std::string to_string(const IntMatrix& m);

}  // namespace toral
