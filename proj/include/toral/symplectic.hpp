// Invariant skew-symmetric forms on Z^4.
#pragma once

#include "toral/linalg.hpp"

#include <optional>
#include <string>

namespace toral {

/// Nondegenerate skew-symmetric integer 4x4 matrix J with its Pfaffian
/// j12*j34 - j13*j24 + j14*j23 (so det J = pfaffian^2).
struct SymplecticForm {
  IntMatrix J;
  Integer pfaffian;

  /// Validates shape, skew-symmetry and nondegeneracy; no normalization.
  static SymplecticForm from_matrix(const IntMatrix& j);

  /// Content 1 and first nonzero row-major entry positive.
  SymplecticForm normalized() const;
};

Integer pfaffian(const IntMatrix& j);

/// [[0, E], [-E, 0]] in 2x2 blocks.
IntMatrix standard_form();

/// Skew matrix from its upper-triangle coordinates (j12, j13, j14, j23, j24, j34).
IntMatrix skew_from_coordinates(const IntVector& upper);
IntVector skew_coordinates(const IntMatrix& j);

/// True iff A^T J A == J. Throws std::invalid_argument when J is not a
/// nondegenerate skew 4x4 matrix or A is not 4x4.
bool check_form(const IntMatrix& a, const IntMatrix& j);

/// Saturated lattice (in skew coordinates) of integer solutions of A^T J A = J.
LatticeBasis invariant_form_lattice(const IntMatrix& a);

enum class FormSearchOutcome { found, no_nonzero_solution, all_degenerate_in_box };

std::string to_string(FormSearchOutcome o);

struct InvariantFormResult {
  std::optional<SymplecticForm> form;
  FormSearchOutcome outcome = FormSearchOutcome::no_nonzero_solution;
  Eigen::Index solution_dimension = 0;
  int box = 0;
};

/// Canonical invariant symplectic form for A, searched over integer
/// combinations of the saturated solution basis with coefficients in
/// [-box, box]. Among nondegenerate candidates the sparsest wins, then the
/// lexicographically smallest profile of |entries| (upper triangle, row-major,
/// positive entry preferred on equal magnitude).
InvariantFormResult solve_invariant_form(const IntMatrix& a, int box = 3);

}  // namespace toral
