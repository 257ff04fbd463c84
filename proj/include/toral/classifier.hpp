// Dynamical classification of a unimodular 4x4 integer matrix: spectral type
// from the mu-quadratic, ergodicity, entropy, exact eigen-data, resonance
// lattices and the transitive/decomposable verdict.
#pragma once

#include "toral/conjugacy.hpp"
#include "toral/numeric.hpp"
#include "toral/polynomial.hpp"
#include "toral/symplectic.hpp"

#include <optional>
#include <string>
#include <vector>

namespace toral {

enum class SpectralType { anosov_saddle, anosov_saddle_focus, partially_hyperbolic, elliptic, parabolic };

/// snake_case names, e.g. "partially_hyperbolic".
std::string to_string(SpectralType t);

/// Placement of the mu-roots relative to +-2, decided exactly from the signs of
/// the mu-quadratic at +-2, its vertex and its discriminant. Throws
/// std::invalid_argument when p is not a reciprocal monic quartic.
SpectralType spectral_classify(const IntPolynomial& p);

bool has_expanding_direction(SpectralType t);

struct ErgodicityVerdict {
  bool ergodic = false;
  std::vector<int> orders;  // k with Phi_k | chi

  std::string certificate() const;
};

ErgodicityVerdict ergodicity_test(const IntMatrix& a);

struct EntropyValue {
  Real value;
  unsigned digits = 50;
  bool exact_zero = false;

  std::string decimal() const;  // `digits` places after the point
  std::string bound() const;    // absolute error bound, e.g. "1e-50"
};

/// Sum of log|lambda| over |lambda| > 1. Reciprocal quartics go through the
/// closed form lambda = (mu + sqrt(mu^2 - 4)) / 2; anything else through
/// numerically isolated roots of the irreducible factors. Spectra made only
/// of roots of unity give an exact zero.
EntropyValue entropy(const IntMatrix& a, unsigned digits = 50);

enum class Branch { unstable, stable };

/// Eigenvector gamma of A for the dominant (unstable) or weakest (stable)
/// eigenvalue lambda. Coordinate j of gamma is sum_i coordinates(j, i) lambda^i
/// in the power basis of the minimal polynomial of lambda; the first nonzero
/// coordinate is 1.
struct EigenData {
  Branch branch = Branch::unstable;
  IntPolynomial minimal_polynomial;
  RatMatrix coordinates;       // 4 x d
  Complex lambda;
  std::vector<Complex> gamma;  // numeric shadow, 4 entries
  std::optional<Real> alpha;   // rotation angle of the unit-circle pair
  unsigned digits = 50;

  Eigen::Index degree() const { return coordinates.cols(); }
  bool real() const { return lambda.im == 0; }
};

/// Throws std::domain_error for elliptic/parabolic spectra or when no
/// eigenvalue leaves the unit circle.
EigenData eigen_data(const IntMatrix& a, Branch branch = Branch::unstable, unsigned digits = 50);

struct ResonanceLattice {
  LatticeBasis lattice;

  Eigen::Index rank() const { return lattice.rank(); }
};

/// {m in Z^4 : (m, gamma) = 0}, i.e. the saturated integer kernel of the
/// stacked rows c_0^T .. c_(d-1)^T.
ResonanceLattice resonance_lattice(const EigenData& ed);

/// Exact test (m, gamma) = 0 on the c-coordinates.
bool is_resonant(const EigenData& ed, const IntVector& m);

struct InvariantSplitting {
  LatticeBasis W_star;  // Z-points of the hyperbolic plane
  LatticeBasis W_c;     // Z-points of the center plane
  RealMatrix W_cs;      // 4 x 3 columns: W_c basis, gamma_s
  RealMatrix W_cu;      // 4 x 3 columns: W_c basis, gamma_u
};

struct ClassifyOptions {
  unsigned digits = 50;
  int form_box = 3;
  int witness_bound = 10;
};

struct ClassificationReport {
  IntMatrix input;
  Integer det;
  InvariantFormResult form;
  IntPolynomial char_poly;
  Factorization factorization;
  std::optional<SpectralType> spectral_type;  // empty for non-reciprocal chi
  ErgodicityVerdict ergodicity;
  EntropyValue entropy;
  std::optional<bool> transitive;  // partially hyperbolic inputs only
  std::optional<EigenData> unstable;
  std::optional<EigenData> stable;
  std::optional<ResonanceLattice> resonance_unstable;
  std::optional<ResonanceLattice> resonance_stable;
  std::optional<Decomposition> decomposition;
  std::optional<InvariantSplitting> splitting;
  ClassifyOptions options;
};

/// Throws std::invalid_argument for non-4x4 input or |det| != 1, and
/// InvariantViolation when the independent transitivity routes disagree.
ClassificationReport classify(const IntMatrix& a, const ClassifyOptions& options = {});

}  // namespace toral
