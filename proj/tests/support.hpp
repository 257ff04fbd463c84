// Test helpers: literal matrices, independent oracles, seeded generators.
#pragma once

#include "toral/conjugacy.hpp"
#include "toral/linalg.hpp"
#include "toral/polynomial.hpp"

#include <filesystem>
#include <initializer_list>
#include <random>
#include <vector>

namespace toral::test {

inline IntMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  IntMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (long v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline IntVector vec(std::initializer_list<long> v) {
  IntVector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (long x : v) out(i++) = x;
  return out;
}

inline IntPolynomial poly_desc(std::initializer_list<long> descending) {
  std::vector<Integer> c;
  for (auto it = std::rbegin(descending); it != std::rend(descending); ++it) c.emplace_back(*it);
  return IntPolynomial(std::move(c));
}

inline const IntMatrix& ph_matrix() {
  static const IntMatrix a = mat({{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {-1, 3, -3, 3}});
  return a;
}

inline const IntMatrix& ph_form() {
  static const IntMatrix j = mat({{0, 0, 1, 0}, {0, 0, -3, 1}, {-1, 3, 0, 0}, {0, -1, 0, 0}});
  return j;
}

inline const IntMatrix& decomposable_matrix() {
  static const IntMatrix a = mat({{2, 1, 0, 0}, {1, 1, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}});
  return a;
}

inline IntMatrix rotation_block(int k) {
  switch (k) {
    case 3: return mat({{0, -1}, {1, -1}});
    case 4: return mat({{0, -1}, {1, 0}});
    case 6: return mat({{0, -1}, {1, 1}});
  }
  throw std::invalid_argument("rotation_block: k must be 3, 4 or 6");
}

// Oracle: cofactor expansion along the first row.
inline Integer cofactor_det(const IntMatrix& m) {
  const Eigen::Index n = m.rows();
  if (n == 1) return m(0, 0);
  Integer d = 0;
  for (Eigen::Index c = 0; c < n; ++c) {
    if (m(0, c) == 0) continue;
    IntMatrix minor(n - 1, n - 1);
    for (Eigen::Index i = 1; i < n; ++i)
      for (Eigen::Index j = 0, jj = 0; j < n; ++j)
        if (j != c) minor(i - 1, jj++) = m(i, j);
    const Integer term = m(0, c) * cofactor_det(minor);
    d += (c % 2 == 0) ? term : Integer(-term);
  }
  return d;
}

// Oracle: triple-loop product.
inline IntMatrix schoolbook_product(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix c = IntMatrix::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j)
      for (Eigen::Index k = 0; k < a.cols(); ++k) c(i, j) += a(i, k) * b(k, j);
  return c;
}

// Oracle: adjugate inverse of a unimodular matrix.
inline IntMatrix adjugate_inverse(const IntMatrix& a) {
  const Eigen::Index n = a.rows();
  const Integer d = cofactor_det(a);
  IntMatrix inv(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      IntMatrix minor(n - 1, n - 1);
      for (Eigen::Index r = 0, rr = 0; r < n; ++r) {
        if (r == j) continue;
        for (Eigen::Index c = 0, cc = 0; c < n; ++c)
          if (c != i) minor(rr, cc++) = a(r, c);
        ++rr;
      }
      Integer cof = cofactor_det(minor);
      if ((i + j) % 2) cof = -cof;
      inv(i, j) = cof * d;  // d = +-1, so 1/d = d
    }
  return inv;
}

/// Uniform integer matrix with entries in [-2, 2] and determinant +-1.
inline IntMatrix random_unimodular(std::mt19937_64& rng, Eigen::Index n = 4) {
  std::uniform_int_distribution<int> entry(-2, 2);
  for (;;) {
    IntMatrix u(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) u(i, j) = entry(rng);
    const Integer d = cofactor_det(u);
    if (d == 1 || d == -1) return u;
  }
}

inline IntMatrix conjugate(const IntMatrix& u, const IntMatrix& a) {
  return schoolbook_product(schoolbook_product(u, a), adjugate_inverse(u));
}

inline std::filesystem::path fixture_dir() { return std::filesystem::path(TORAL_FIXTURE_DIR); }

}  // namespace toral::test
