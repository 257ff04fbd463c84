#include "toral/linalg.hpp"

#include <numeric>
#include <sstream>

namespace toral {

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

RatMatrix to_rational(const IntMatrix& a) {
  RatMatrix r(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) r(i, j) = Rational(a(i, j));
  return r;
}

IntMatrix to_integer(const RatMatrix& a) {
  IntMatrix r(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (!is_integral(a(i, j))) throw std::domain_error("to_integer: entry is not an integer");
      r(i, j) = numerator_of(a(i, j));
    }
  return r;
}

RatMatrix inverse(const RatMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse: matrix is not square");
  const Eigen::Index n = a.rows();
  RatMatrix work(n, 2 * n);
  work.leftCols(n) = a;
  work.rightCols(n) = identity<Rational>(n);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index p = col;
    while (p < n && work(p, col) == 0) ++p;
    if (p == n) throw std::domain_error("inverse: matrix is singular");
    if (p != col) work.row(p).swap(work.row(col));
    const Rational pivot = work(col, col);
    work.row(col) /= pivot;
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == col || work(r, col) == 0) continue;
      const Rational f = work(r, col);
      work.row(r) -= f * work.row(col);
    }
  }
  return work.rightCols(n);
}

RatMatrix inverse(const IntMatrix& a) { return inverse(to_rational(a)); }

bool is_unimodular(const IntMatrix& a) {
  if (a.rows() != a.cols()) return false;
  const Integer d = determinant(a);
  return d == 1 || d == -1;
}

IntMatrix unimodular_inverse(const IntMatrix& a) {
  if (!is_unimodular(a)) throw std::domain_error("unimodular_inverse: |det| != 1");
  return to_integer(inverse(a));
}

RatMatrix reduced_row_echelon(const RatMatrix& a, std::vector<Eigen::Index>* pivots) {
  RatMatrix m = a;
  std::vector<Eigen::Index> piv;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index p = row;
    while (p < m.rows() && m(p, col) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row) m.row(p).swap(m.row(row));
    const Rational pivot = m(row, col);
    m.row(row) /= pivot;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      const Rational f = m(r, col);
      m.row(r) -= f * m.row(row);
    }
    piv.push_back(col);
    ++row;
  }
  if (pivots) *pivots = std::move(piv);
  return m;
}

Eigen::Index rank(const RatMatrix& a) {
  std::vector<Eigen::Index> piv;
  reduced_row_echelon(a, &piv);
  return static_cast<Eigen::Index>(piv.size());
}

Eigen::Index rank(const IntMatrix& a) { return rank(to_rational(a)); }

HermiteForm hermite_normal_form(const IntMatrix& m) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  IntMatrix h = m;
  IntMatrix u = identity<Integer>(rows);

  auto swap_rows = [&](Eigen::Index i, Eigen::Index j) {
    if (i == j) return;
    h.row(i).swap(h.row(j));
    u.row(i).swap(u.row(j));
  };
  // row_i -= q * row_j
  auto axpy = [&](Eigen::Index i, const Integer& q, Eigen::Index j) {
    if (q == 0) return;
    h.row(i) -= q * h.row(j);
    u.row(i) -= q * u.row(j);
  };

  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < cols && row < rows; ++col) {
    // Euclid on the column below `row` until a single nonzero entry remains.
    for (;;) {
      Eigen::Index best = -1;
      for (Eigen::Index r = row; r < rows; ++r) {
        if (h(r, col) == 0) continue;
        if (best < 0 || abs_value(h(r, col)) < abs_value(h(best, col))) best = r;
      }
      if (best < 0) break;
      swap_rows(row, best);
      bool done = true;
      for (Eigen::Index r = row + 1; r < rows; ++r) {
        if (h(r, col) == 0) continue;
        axpy(r, Integer(h(r, col) / h(row, col)), row);
        if (h(r, col) != 0) done = false;
      }
      if (done) break;
    }
    if (h(row, col) == 0) continue;
    if (h(row, col) < 0) {
      h.row(row) = -h.row(row);
      u.row(row) = -u.row(row);
    }
    for (Eigen::Index r = 0; r < row; ++r) axpy(r, floor_div(h(r, col), h(row, col)), row);
    ++row;
  }
  return HermiteForm{std::move(h), std::move(u), row};
}

bool LatticeBasis::contains(const IntVector& v) const {
  if (v.size() != dimension()) throw std::invalid_argument("LatticeBasis::contains: dimension mismatch");
  IntVector w = v;
  Eigen::Index col = 0;
  for (Eigen::Index i = 0; i < rank(); ++i) {
    while (rows(i, col) == 0) {
      if (w(col) != 0) return false;
      ++col;
    }
    if (w(col) % rows(i, col) != 0) return false;
    const Integer q = w(col) / rows(i, col);
    w -= q * rows.row(i).transpose();
  }
  for (Eigen::Index j = 0; j < w.size(); ++j)
    if (w(j) != 0) return false;
  return true;
}

std::vector<RatVector> rational_kernel(const RatMatrix& m) {
  std::vector<Eigen::Index> piv;
  const RatMatrix r = reduced_row_echelon(m, &piv);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (auto p : piv) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<RatVector> basis;
  for (Eigen::Index f = 0; f < m.cols(); ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    RatVector v = RatVector::Zero(m.cols());
    v(f) = Rational(1);
    for (std::size_t i = 0; i < piv.size(); ++i) v(piv[i]) = -r(static_cast<Eigen::Index>(i), f);
    basis.push_back(std::move(v));
  }
  return basis;
}

LatticeBasis lattice_span(const IntMatrix& rows) { return hermite_normal_form(rows).basis(); }

LatticeBasis saturated_integer_kernel(const IntMatrix& m) {
  // U * M^T = H; the rows of U facing zero rows of H span ker_Z(M) over Z.
  const IntMatrix mt = m.transpose();
  const HermiteForm hf = hermite_normal_form(mt);
  const Eigen::Index n = m.cols();
  const IntMatrix kernel_rows = hf.U.bottomRows(n - hf.rank);
  return lattice_span(kernel_rows);
}

Integer content(const IntVector& v) {
  Integer g = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) g = mp::gcd(g, abs_value(v(i)));
  return g;
}

IntVector primitive_integer_vector(const RatVector& v) {
  Integer lcm = 1;
  for (Eigen::Index i = 0; i < v.size(); ++i) lcm = mp::lcm(lcm, denominator_of(v(i)));
  IntVector w(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) w(i) = numerator_of(Rational(v(i) * lcm));
  const Integer g = content(w);
  if (g > 1)
    for (Eigen::Index i = 0; i < w.size(); ++i) w(i) /= g;
  return w;
}

LatticeBasis saturate(const IntMatrix& rows) {
  const auto complement = rational_kernel(to_rational(rows));
  IntMatrix normals(static_cast<Eigen::Index>(complement.size()), rows.cols());
  for (std::size_t i = 0; i < complement.size(); ++i)
    normals.row(static_cast<Eigen::Index>(i)) = primitive_integer_vector(complement[i]).transpose();
  return saturated_integer_kernel(normals);
}

std::string to_string(const IntMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i) os << ", ";
    os << '[';
    for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace toral
