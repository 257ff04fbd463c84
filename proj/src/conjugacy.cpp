#include "toral/conjugacy.hpp"

#include <algorithm>
#include <cmath>

namespace toral {

IntMatrix companion_of(const IntPolynomial& p) {
  if (!p.is_monic()) throw std::invalid_argument("companion_of: polynomial is not monic");
  const int n = p.degree();
  if (n < 1) throw std::invalid_argument("companion_of: degree must be at least 1");
  IntMatrix c = IntMatrix::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) c(i, i + 1) = 1;
  for (int j = 0; j < n; ++j) c(n - 1, j) = -p.coefficient(static_cast<std::size_t>(j));
  return c;
}

IntVector vec_rows(const IntMatrix& t) {
  IntVector v(t.rows() * t.cols());
  for (Eigen::Index i = 0; i < t.rows(); ++i)
    for (Eigen::Index j = 0; j < t.cols(); ++j) v(i * t.cols() + j) = t(i, j);
  return v;
}

IntMatrix unvec_rows(const IntVector& v, Eigen::Index n) {
  if (v.size() != n * n) throw std::invalid_argument("unvec_rows: size mismatch");
  IntMatrix t(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) t(i, j) = v(i * n + j);
  return t;
}

SylvesterSpace sylvester_solution_space(const IntMatrix& target, const IntMatrix& source) {
  if (target.rows() != target.cols() || source.rows() != source.cols() || target.rows() != source.rows())
    throw std::invalid_argument("sylvester_solution_space: matrices must be square of equal size");
  const Eigen::Index n = target.rows();
  // (target*T - T*source)(i,j) = sum_k target(i,k) T(k,j) - T(i,k) source(k,j)
  IntMatrix system = IntMatrix::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index k = 0; k < n; ++k) {
        system(i * n + j, k * n + j) += target(i, k);
        system(i * n + j, i * n + k) -= source(k, j);
      }
  SylvesterSpace space{target, source, {}};
  for (const RatVector& v : rational_kernel(to_rational(system))) {
    RatMatrix t(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) t(i, j) = v(i * n + j);
    space.basis.push_back(std::move(t));
  }
  return space;
}

bool verify_witness(const IntMatrix& t, const IntMatrix& source, const IntMatrix& target) {
  if (t.rows() != source.rows() || t.cols() != source.cols()) return false;
  if (!is_unimodular(t)) return false;
  return IntMatrix(t * source) == IntMatrix(target * t);
}

namespace {

using Coeffs = std::vector<int>;

bool enumeration_before(const Coeffs& a, const Coeffs& b) {
  int la = 0, lb = 0;
  for (int x : a) la += std::abs(x);
  for (int x : b) lb += std::abs(x);
  if (la != lb) return la < lb;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

// Vectors in [-r, r]^dim with max |c| == r, in enumeration order.
std::vector<Coeffs> shell(int r, std::size_t dim) {
  std::vector<Coeffs> out;
  Coeffs c(dim, -r);
  for (;;) {
    if (std::any_of(c.begin(), c.end(), [r](int x) { return std::abs(x) == r; })) out.push_back(c);
    std::size_t i = 0;
    while (i < dim && c[i] == r) c[i++] = -r;
    if (i == dim) break;
    ++c[i];
  }
  std::sort(out.begin(), out.end(), enumeration_before);
  return out;
}

}  // namespace

WitnessSearch unimodular_witness_search(const SylvesterSpace& space, int bound, std::size_t max_candidates) {
  if (space.basis.empty()) throw std::invalid_argument("unimodular_witness_search: empty solution space");
  if (bound < 0) throw std::invalid_argument("unimodular_witness_search: negative bound");
  const Eigen::Index n = space.target.rows();
  const std::size_t dim = space.basis.size();

  RatMatrix rows(static_cast<Eigen::Index>(dim), n * n);
  for (std::size_t b = 0; b < dim; ++b)
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) rows(static_cast<Eigen::Index>(b), i * n + j) = space.basis[b](i, j);
  IntMatrix int_rows(rows.rows(), rows.cols());
  for (Eigen::Index r = 0; r < rows.rows(); ++r)
    int_rows.row(r) = primitive_integer_vector(rows.row(r).transpose()).transpose();
  const LatticeBasis lattice = saturate(int_rows);
  std::vector<IntMatrix> generators;
  for (Eigen::Index r = 0; r < lattice.rank(); ++r) generators.push_back(unvec_rows(lattice.rows.row(r).transpose(), n));

  int effective = bound;
  while (effective > 0 && std::pow(2.0 * effective + 1.0, static_cast<double>(dim)) > static_cast<double>(max_candidates))
    --effective;

  WitnessSearch result;
  result.bound = effective;
  for (int r = 1; r <= effective; ++r) {
    for (const Coeffs& c : shell(r, generators.size())) {
      ++result.examined;
      IntMatrix t = IntMatrix::Zero(n, n);
      for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0) t += Integer(c[i]) * generators[i];
      const Integer d = determinant(t);
      if (d != 1 && d != -1) continue;
      const bool ok = verify_witness(t, space.source, space.target);
      if (!ok) throw InvariantViolation("unimodular_witness_search: unimodular solution fails verification");
      result.witness = ConjugacyWitness{std::move(t), true};
      return result;
    }
  }
  return result;
}

std::string to_string(ConjugacyKind k) {
  switch (k) {
    case ConjugacyKind::conjugate: return "conjugate";
    case ConjugacyKind::not_conjugate: return "not-conjugate";
    case ConjugacyKind::undecided: return "undecided";
  }
  return "unknown";
}

Integer primary_sublattice_index(const IntMatrix& a) {
  if (a.rows() != 4) return 1;  // factorization is only available for quartics
  const Factorization f = factor_monic_quartic(char_poly(a));
  if (f.factors.size() < 2) return 1;
  IntMatrix rows(0, a.cols());
  for (const Factor& fac : f.factors) {
    IntPolynomial q = fac.poly;
    for (int m = 1; m < fac.multiplicity; ++m) q = q * fac.poly;
    const LatticeBasis k = saturated_integer_kernel(evaluate_at_matrix(q, a));
    IntMatrix grown(rows.rows() + k.rank(), a.cols());
    grown << rows, k.rows;
    rows = grown;
  }
  if (rows.rows() != a.cols()) throw InvariantViolation("primary_sublattice_index: primary components do not fill the space");
  return abs_value(determinant(rows));
}

namespace {

void require_unimodular_square(const IntMatrix& a, const char* who) {
  if (a.rows() != a.cols()) throw std::invalid_argument(std::string(who) + ": matrix is not square");
  if (!is_unimodular(a)) throw std::invalid_argument(std::string(who) + ": |det| != 1");
}

bool entrywise_less(const IntMatrix& a, const IntMatrix& b) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return a(i, j) < b(i, j);
  return false;
}

ConjugacyVerdict decide_oriented(const IntMatrix& a, const IntMatrix& a2, const IntPolynomial& chi, int bound) {
  ConjugacyVerdict v;
  v.bound = bound;
  if (a == a2) {
    v.kind = ConjugacyKind::conjugate;
    v.witness = identity<Integer>(a.rows());
    v.route = "identical";
    return v;
  }
  const Integer index = primary_sublattice_index(a);
  if (index != primary_sublattice_index(a2)) {
    v.kind = ConjugacyKind::not_conjugate;
    v.route = "sublattice_index";
    return v;
  }
  const IntMatrix b = companion_of(chi);
  // The companion has index equal to the index of its own primary sublattices,
  // so a mismatch rules out A ~ B without searching.
  const bool companion_possible = index == primary_sublattice_index(b);
  const WitnessSearch s1 = companion_possible ? unimodular_witness_search(sylvester_solution_space(b, a), bound)
                                              : WitnessSearch{};
  if (s1.witness) {
    const WitnessSearch s2 = unimodular_witness_search(sylvester_solution_space(b, a2), bound);
    if (s2.witness) {
      v.kind = ConjugacyKind::conjugate;
      v.witness = IntMatrix(unimodular_inverse(s2.witness->T) * s1.witness->T);
      v.route = "companion";
      return v;
    }
  }
  const WitnessSearch direct = unimodular_witness_search(sylvester_solution_space(a2, a), bound);
  v.bound = direct.bound;
  if (direct.witness) {
    v.kind = ConjugacyKind::conjugate;
    v.witness = direct.witness->T;
    v.route = "direct";
    return v;
  }
  v.kind = ConjugacyKind::undecided;
  v.route = "search";
  return v;
}

}  // namespace

ConjugacyVerdict decide_conjugacy(const IntMatrix& a, const IntMatrix& a2, int bound) {
  require_unimodular_square(a, "decide_conjugacy");
  require_unimodular_square(a2, "decide_conjugacy");
  if (a.rows() != a2.rows()) throw std::invalid_argument("decide_conjugacy: dimension mismatch");
  const IntPolynomial chi = char_poly(a);
  if (!(chi == char_poly(a2))) {
    ConjugacyVerdict v;
    v.kind = ConjugacyKind::not_conjugate;
    v.bound = bound;
    v.route = "char_poly";
    return v;
  }
  const bool swapped = entrywise_less(a2, a);
  ConjugacyVerdict v = swapped ? decide_oriented(a2, a, chi, bound) : decide_oriented(a, a2, chi, bound);
  if (v.witness) {
    if (swapped) v.witness = unimodular_inverse(*v.witness);
    if (!verify_witness(*v.witness, a, a2)) throw InvariantViolation("decide_conjugacy: witness fails verification");
  }
  return v;
}

IntMatrix block_diagonal(const IntMatrix& upper, const IntMatrix& lower) {
  IntMatrix m = IntMatrix::Zero(upper.rows() + lower.rows(), upper.cols() + lower.cols());
  m.topLeftCorner(upper.rows(), upper.cols()) = upper;
  m.bottomRightCorner(lower.rows(), lower.cols()) = lower;
  return m;
}

namespace {

// Matrix of A restricted to the lattice spanned by the columns of `basis`.
IntMatrix restricted_action(const IntMatrix& a, const IntMatrix& basis) {
  const RatMatrix b = to_rational(basis);
  const RatMatrix gram = b.transpose() * b;
  const RatMatrix x = inverse(gram) * b.transpose() * to_rational(IntMatrix(a * basis));
  if (RatMatrix(b * x) != to_rational(IntMatrix(a * basis)))
    throw InvariantViolation("split_decomposable: sublattice is not invariant");
  return to_integer(x);
}

int finite_order(const IntMatrix& r) {
  IntMatrix p = r;
  const IntMatrix e = identity<Integer>(r.rows());
  for (int k = 1; k <= 12; ++k) {
    if (p == e) return k;
    p = (p * r).eval();
  }
  return 0;
}

}  // namespace

Decomposition split_decomposable(const IntMatrix& a, int bound) {
  if (a.rows() != 4 || a.cols() != 4) throw std::invalid_argument("split_decomposable: expected a 4x4 matrix");
  require_unimodular_square(a, "split_decomposable");
  const Factorization f = factor_monic_quartic(char_poly(a));
  for (const Factor& fac : f.factors)
    if (fac.poly.degree() == 1)
      throw ParabolicFactor("split_decomposable: characteristic polynomial has the factor " + to_string(fac.poly));
  if (f.irreducible()) throw NotDecomposable("split_decomposable: characteristic polynomial is irreducible");
  if (f.factors.size() != 2 || f.factors[0].multiplicity != 1 || f.factors[1].multiplicity != 1)
    throw NotDecomposable("split_decomposable: expected two distinct quadratic factors, got " + f.to_string());

  const IntPolynomial* center = nullptr;
  const IntPolynomial* hyperbolic = nullptr;
  for (const Factor& fac : f.factors) {
    const IntPolynomial& q = fac.poly;
    const bool periodic = q.coefficient(0) == 1 && abs_value(q.coefficient(1)) <= 1;
    const bool expanding = q.coefficient(0) == 1 && abs_value(q.coefficient(1)) > 2;
    if (periodic && !center) center = &q;
    else if (expanding && !hyperbolic) hyperbolic = &q;
  }
  if (!center || !hyperbolic)
    throw NotDecomposable("split_decomposable: factors " + f.to_string() +
                          " are not a hyperbolic pair times a root-of-unity pair of order 3, 4 or 6");

  Decomposition d;
  d.bound = bound;
  d.hyperbolic_lattice = saturated_integer_kernel(evaluate_at_matrix(*hyperbolic, a));
  d.center_lattice = saturated_integer_kernel(evaluate_at_matrix(*center, a));
  if (d.hyperbolic_lattice.rank() != 2 || d.center_lattice.rank() != 2)
    throw InvariantViolation("split_decomposable: invariant planes do not have rank 2");

  const IntMatrix hyp_basis = d.hyperbolic_lattice.rows.transpose();
  const IntMatrix cen_basis = d.center_lattice.rows.transpose();
  IntMatrix s(4, 4);
  s << hyp_basis, cen_basis;
  d.index = abs_value(determinant(s));
  d.H_block = restricted_action(a, hyp_basis);
  d.R_block = restricted_action(a, cen_basis);
  d.k = finite_order(d.R_block);
  if (d.k != 3 && d.k != 4 && d.k != 6) throw InvariantViolation("split_decomposable: periodic block has unexpected order");

  if (d.index == 1) {
    d.S = s;
  } else {
    const IntMatrix target = block_diagonal(d.H_block, d.R_block);
    const WitnessSearch w = unimodular_witness_search(sylvester_solution_space(target, a), bound);
    if (w.witness) d.S = unimodular_inverse(w.witness->T);
  }
  if (d.S) {
    const IntMatrix blocks = block_diagonal(d.H_block, d.R_block);
    if (IntMatrix(a * *d.S) != IntMatrix(*d.S * blocks) || !is_unimodular(*d.S))
      throw InvariantViolation("split_decomposable: S does not conjugate A to the block form");
  }
  return d;
}

}  // namespace toral
