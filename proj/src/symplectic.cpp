#include "toral/symplectic.hpp"

#include <array>
#include <utility>

namespace toral {

namespace {

constexpr std::array<std::pair<int, int>, 6> kUpper{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

void require_4x4(const IntMatrix& m, const char* who) {
  if (m.rows() != 4 || m.cols() != 4) throw std::invalid_argument(std::string(who) + ": expected a 4x4 matrix");
}

bool is_skew(const IntMatrix& j) { return j.transpose() == IntMatrix(-j); }

// Lexicographic profile used to pick the canonical form.
struct FormKey {
  int nonzero = 0;
  std::array<std::pair<Integer, int>, 6> profile;

  friend bool operator<(const FormKey& a, const FormKey& b) {
    if (a.nonzero != b.nonzero) return a.nonzero < b.nonzero;
    return a.profile < b.profile;
  }
};

FormKey key_of(const IntVector& coords) {
  FormKey k;
  for (int i = 0; i < 6; ++i) {
    if (coords(i) != 0) ++k.nonzero;
    k.profile[static_cast<std::size_t>(i)] = {abs_value(coords(i)), coords(i) < 0 ? 1 : 0};
  }
  return k;
}

Integer pfaffian_of_coordinates(const IntVector& u) { return u(0) * u(5) - u(1) * u(4) + u(2) * u(3); }

IntVector normalize_coordinates(IntVector u) {
  const Integer g = content(u);
  if (g > 1)
    for (Eigen::Index i = 0; i < u.size(); ++i) u(i) /= g;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (u(i) == 0) continue;
    if (u(i) < 0) u = -u;
    break;
  }
  return u;
}

}  // namespace

Integer pfaffian(const IntMatrix& j) {
  require_4x4(j, "pfaffian");
  return j(0, 1) * j(2, 3) - j(0, 2) * j(1, 3) + j(0, 3) * j(1, 2);
}

SymplecticForm SymplecticForm::from_matrix(const IntMatrix& j) {
  require_4x4(j, "SymplecticForm");
  if (!is_skew(j)) throw std::invalid_argument("SymplecticForm: matrix is not skew-symmetric");
  Integer pf = toral::pfaffian(j);
  if (pf == 0) throw std::invalid_argument("SymplecticForm: form is degenerate (Pfaffian 0)");
  return SymplecticForm{j, std::move(pf)};
}

SymplecticForm SymplecticForm::normalized() const {
  return from_matrix(skew_from_coordinates(normalize_coordinates(skew_coordinates(J))));
}

IntMatrix standard_form() {
  IntMatrix j = IntMatrix::Zero(4, 4);
  j(0, 2) = 1;
  j(1, 3) = 1;
  j(2, 0) = -1;
  j(3, 1) = -1;
  return j;
}

IntMatrix skew_from_coordinates(const IntVector& upper) {
  if (upper.size() != 6) throw std::invalid_argument("skew_from_coordinates: expected 6 coordinates");
  IntMatrix j = IntMatrix::Zero(4, 4);
  for (std::size_t k = 0; k < kUpper.size(); ++k) {
    const auto [r, c] = kUpper[k];
    j(r, c) = upper(static_cast<Eigen::Index>(k));
    j(c, r) = -upper(static_cast<Eigen::Index>(k));
  }
  return j;
}

IntVector skew_coordinates(const IntMatrix& j) {
  require_4x4(j, "skew_coordinates");
  IntVector u(6);
  for (std::size_t k = 0; k < kUpper.size(); ++k) u(static_cast<Eigen::Index>(k)) = j(kUpper[k].first, kUpper[k].second);
  return u;
}

bool check_form(const IntMatrix& a, const IntMatrix& j) {
  require_4x4(a, "check_form");
  SymplecticForm::from_matrix(j);
  return IntMatrix(a.transpose() * j * a) == j;
}

LatticeBasis invariant_form_lattice(const IntMatrix& a) {
  require_4x4(a, "invariant_form_lattice");
  // Column k holds vec(A^T J_k A - J_k) for the k-th skew basis matrix.
  IntMatrix system(16, 6);
  for (Eigen::Index k = 0; k < 6; ++k) {
    IntVector e = IntVector::Zero(6);
    e(k) = 1;
    const IntMatrix jk = skew_from_coordinates(e);
    const IntMatrix residual = a.transpose() * jk * a - jk;
    for (Eigen::Index r = 0; r < 4; ++r)
      for (Eigen::Index c = 0; c < 4; ++c) system(4 * r + c, k) = residual(r, c);
  }
  return saturated_integer_kernel(system);
}

std::string to_string(FormSearchOutcome o) {
  switch (o) {
    case FormSearchOutcome::found: return "found";
    case FormSearchOutcome::no_nonzero_solution: return "no nonzero solution";
    case FormSearchOutcome::all_degenerate_in_box: return "all solutions in the search box are degenerate";
  }
  return "unknown";
}

InvariantFormResult solve_invariant_form(const IntMatrix& a, int box) {
  if (box < 1) throw std::invalid_argument("solve_invariant_form: box must be >= 1");
  const LatticeBasis lattice = invariant_form_lattice(a);
  InvariantFormResult result;
  result.box = box;
  result.solution_dimension = lattice.rank();
  if (lattice.rank() == 0) {
    result.outcome = FormSearchOutcome::no_nonzero_solution;
    return result;
  }

  const Eigen::Index dim = lattice.rank();
  std::vector<int> coeff(static_cast<std::size_t>(dim), -box);
  std::optional<IntVector> best;
  FormKey best_key;
  for (;;) {
    IntVector u = IntVector::Zero(6);
    for (Eigen::Index i = 0; i < dim; ++i)
      if (coeff[static_cast<std::size_t>(i)] != 0)
        u += Integer(coeff[static_cast<std::size_t>(i)]) * lattice.rows.row(i).transpose();
    if (pfaffian_of_coordinates(u) != 0) {
      IntVector n = normalize_coordinates(u);
      FormKey k = key_of(n);
      if (!best || k < best_key) {
        best = std::move(n);
        best_key = std::move(k);
      }
    }
    std::size_t i = 0;
    while (i < coeff.size() && coeff[i] == box) coeff[i++] = -box;
    if (i == coeff.size()) break;
    ++coeff[i];
  }

  if (!best) {
    result.outcome = FormSearchOutcome::all_degenerate_in_box;
    return result;
  }
  SymplecticForm form = SymplecticForm::from_matrix(skew_from_coordinates(*best));
  if (!check_form(a, form.J)) throw InvariantViolation("solve_invariant_form: returned form is not invariant");
  result.form = std::move(form);
  result.outcome = FormSearchOutcome::found;
  return result;
}

}  // namespace toral
