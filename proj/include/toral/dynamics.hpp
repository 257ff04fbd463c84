// Numeric and combinatorial cross-checks of the exact verdicts: dual orbits,
// periodic point counts and Weyl sums along the unstable leaf.
#pragma once

#include "toral/classifier.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace toral {

struct DualOrbitResult {
  IntVector m;
  std::optional<std::size_t> period;  // empty: no return within max_iter
  std::size_t max_iter = 0;

  bool periodic() const { return period.has_value(); }
};

/// Iterates m <- A^T m and reports the first exact return to the start.
/// Returns are screened modulo a 61-bit prime and each candidate is
/// confirmed in exact arithmetic. Throws std::invalid_argument for m = 0.
DualOrbitResult dual_orbit_test(const IntMatrix& a, const IntVector& m, std::size_t max_iter = 10000);

/// (A^T)^steps m by plain exact iteration.
IntVector dual_orbit_iterate(const IntMatrix& a, const IntVector& m, std::size_t steps);

/// |det(A^n - E)|, the number of points of period n; empty when the
/// determinant vanishes (an eigenvalue is a root of unity of order dividing n).
std::optional<Integer> periodic_point_count(const IntMatrix& a, unsigned n);

struct EquidistributionConfig {
  std::size_t samples = 1'000'000;
  int mode_box = 3;
  double step = 0.71828182845904523536;  // e - 2
  double resonant_threshold = 0.99;
  double nonresonant_threshold = 0.05;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct WeylReport {
  IntVector m;
  std::size_t N = 0;
  double S_N = 0;
  bool resonant_predicted = false;

  bool consistent(const EquidistributionConfig& cfg) const {
    return resonant_predicted ? S_N > cfg.resonant_threshold : S_N < cfg.nonresonant_threshold;
  }
};

/// Samples x_k = k * step * gamma_u mod 1 for k = 0..N-1 and returns
/// |N^-1 sum_k exp(2 pi i (m, x_k))| for every 0 < |m|_inf <= mode_box, in
/// lexicographic order of m. Requires a real eigenvector.
std::vector<WeylReport> leaf_equidistribution(const EigenData& ed, const ResonanceLattice& rl,
                                              const EquidistributionConfig& cfg = {});

}  // namespace toral
