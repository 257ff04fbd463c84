// Normal forms and integer-unimodular conjugacy.
//
// Conjugacy is decided by searching integer solutions of the Sylvester
// equation B T - T A = 0 for one with |det T| = 1. Witnesses are always
// re-verified exactly before they are returned.
#pragma once

#include "toral/linalg.hpp"
#include "toral/polynomial.hpp"

#include <optional>
#include <string>
#include <vector>

namespace toral {

/// Companion matrix of a monic polynomial: ones on the superdiagonal and the
/// negated coefficients c0..c(n-1) in the last row.
IntMatrix companion_of(const IntPolynomial& p);

/// Row-major vectorization, vec(T)[n*i + j] = T(i, j).
IntVector vec_rows(const IntMatrix& t);
IntMatrix unvec_rows(const IntVector& v, Eigen::Index n);

/// Rational basis of {T : target*T - T*source = 0}. An invertible solution
/// satisfies T * source * T^-1 = target.
struct SylvesterSpace {
  IntMatrix target;
  IntMatrix source;
  std::vector<RatMatrix> basis;

  Eigen::Index dimension() const { return static_cast<Eigen::Index>(basis.size()); }
};

SylvesterSpace sylvester_solution_space(const IntMatrix& target, const IntMatrix& source);

struct ConjugacyWitness {
  IntMatrix T;
  bool verified = false;  // T * source * T^-1 == target and |det T| == 1, checked exactly
};

/// True iff T is unimodular and T * source == target * T.
bool verify_witness(const IntMatrix& t, const IntMatrix& source, const IntMatrix& target);

/// Saturates the space to the lattice of integer solutions and enumerates
/// coefficient vectors c in [-K, K]^dim in a fixed order: by max|c|, then by
/// sum|c|, then lexicographically descending. Returns the first T with
/// |det T| = 1. If (2K+1)^dim exceeds `max_candidates` the bound is lowered
/// to the largest K' that fits; the bound actually searched is reported.
struct WitnessSearch {
  std::optional<ConjugacyWitness> witness;
  int bound = 0;
  std::size_t examined = 0;
};

WitnessSearch unimodular_witness_search(const SylvesterSpace& space, int bound,
                                        std::size_t max_candidates = 5'000'000);

/// [Z^n : sum of (ker q_i(A)^m_i ∩ Z^n)] over the distinct irreducible factors
/// q_i^m_i of chi_A. Unimodular conjugation preserves it; 1 when chi_A is a
/// power of a single irreducible, and for sizes other than 4.
Integer primary_sublattice_index(const IntMatrix& a);

enum class ConjugacyKind { conjugate, not_conjugate, undecided };

std::string to_string(ConjugacyKind k);

struct ConjugacyVerdict {
  ConjugacyKind kind = ConjugacyKind::undecided;
  std::optional<IntMatrix> witness;  // T with T * A * T^-1 = A2
  int bound = 0;
  std::string route;  // "identical", "companion", "direct", "char_poly", "sublattice_index", "search"
};

/// Decides whether A and A2 are conjugate by an integer unimodular matrix.
/// Different characteristic polynomials give not_conjugate; otherwise the
/// companion route (A ~ B ~ A2) is tried, then the direct Sylvester search.
/// The verdict is symmetric in its arguments.
ConjugacyVerdict decide_conjugacy(const IntMatrix& a, const IntMatrix& a2, int bound = 10);

class NotDecomposable : public std::domain_error {
 public:
  explicit NotDecomposable(const std::string& what) : std::domain_error(what) {}
};

class ParabolicFactor : public NotDecomposable {
 public:
  explicit ParabolicFactor(const std::string& what) : NotDecomposable(what) {}
};

/// Product structure hyperbolic x periodic of a decomposable automorphism.
struct Decomposition {
  std::optional<IntMatrix> S;  // S^-1 A S = blockdiag(H, R) when present
  IntMatrix H_block;
  IntMatrix R_block;
  int k = 0;        // R^k = E
  Integer index;    // [Z^4 : (W* ∩ Z^4) + (W^c ∩ Z^4)]
  LatticeBasis hyperbolic_lattice;  // W* ∩ Z^4
  LatticeBasis center_lattice;      // W^c ∩ Z^4
  int bound = 0;                    // witness bound used when index > 1

  /// The index is a conjugacy invariant and block-diagonal forms have index 1,
  /// so index > 1 proves that no unimodular S exists.
  bool split_obstructed() const { return index != 1; }
};

/// Splits A with characteristic polynomial q_h * q_c, q_c in {Phi_3, Phi_4,
/// Phi_6} and q_h = x^2 - t x + 1 with |t| > 2. Throws ParabolicFactor if a
/// factor x -+ 1 is present and NotDecomposable for every other shape.
Decomposition split_decomposable(const IntMatrix& a, int bound = 10);

IntMatrix block_diagonal(const IntMatrix& upper, const IntMatrix& lower);

}  // namespace toral
