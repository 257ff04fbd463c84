#include "support.hpp"

#include "toral/dynamics.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>

using namespace toral;
using namespace toral::test;

namespace {

// Oracle: step the transpose one product at a time until the orbit returns.
std::optional<std::size_t> naive_period(const IntMatrix& a, const IntVector& m, std::size_t max_iter) {
  const IntMatrix at = a.transpose();
  IntVector x = m;
  for (std::size_t k = 1; k <= max_iter; ++k) {
    x = schoolbook_product(at, x);
    if (x == m) return k;
  }
  return std::nullopt;
}

// Oracle: |prod (lambda_i^n - 1)| from eigenvalues found by a dense solver.
double eigen_count(const IntMatrix& a, unsigned n) {
  Eigen::Matrix4d m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = static_cast<double>(a(i, j));
  Eigen::EigenSolver<Eigen::Matrix4d> es(m, false);
  std::complex<double> prod = 1;
  for (int i = 0; i < 4; ++i) prod *= std::pow(es.eigenvalues()(i), static_cast<double>(n)) - 1.0;
  return std::abs(prod);
}

IntMatrix saddle_focus() { return companion_of(poly_desc({1, 1, 3, 1, 1})); }

}  // namespace

TEST_CASE("dual orbit examples") {
  const DualOrbitResult rot = dual_orbit_test(decomposable_matrix(), vec({0, 0, 1, 0}));
  REQUIRE(rot.periodic());
  CHECK(*rot.period == 4);

  const DualOrbitResult id = dual_orbit_test(identity<Integer>(4), vec({3, -1, 0, 2}));
  CHECK(id.period == std::optional<std::size_t>(1));

  const DualOrbitResult p = dual_orbit_test(ph_matrix(), vec({1, 0, 0, 0}));
  CHECK_FALSE(p.periodic());
  CHECK(p.max_iter == 10000);

  const DualOrbitResult mixed = dual_orbit_test(decomposable_matrix(), vec({1, 0, 1, 0}), 500);
  CHECK_FALSE(mixed.periodic());

  CHECK_THROWS_AS(dual_orbit_test(ph_matrix(), vec({0, 0, 0, 0})), std::invalid_argument);
  CHECK_THROWS_AS(dual_orbit_test(ph_matrix(), vec({1, 0, 0})), std::invalid_argument);
}

TEST_CASE("dual orbit periods match step-by-step iteration") {
  std::mt19937_64 rng(307);
  for (int k : {3, 4, 6}) {
    const IntMatrix base = block_diagonal(mat({{2, 1}, {1, 1}}), rotation_block(k));
    const IntMatrix a = conjugate(random_unimodular(rng), base);
    for (int x = -1; x <= 1; ++x)
      for (int y = -1; y <= 1; ++y)
        for (int z = -1; z <= 1; ++z)
          for (int w = -1; w <= 1; ++w) {
            if (x == 0 && y == 0 && z == 0 && w == 0) continue;
            const IntVector m = vec({x, y, z, w});
            CHECK(dual_orbit_test(a, m, 60).period == naive_period(a, m, 60));
          }
  }
}

TEST_CASE("long dual orbits stay exact") {
  const IntVector m = vec({1, -2, 0, 1});
  const IntVector x = dual_orbit_iterate(ph_matrix(), m, 10000);
  CHECK(x == IntVector(power(IntMatrix(ph_matrix().transpose()), 10000) * m));
  CHECK(dual_orbit_iterate(ph_matrix(), m, 0) == m);
}

TEST_CASE("periodic point counts") {
  CHECK(periodic_point_count(ph_matrix(), 1) == std::optional<Integer>(1));
  CHECK(periodic_point_count(decomposable_matrix(), 1) == std::optional<Integer>(2));
  CHECK_FALSE(periodic_point_count(decomposable_matrix(), 4));
  CHECK_FALSE(periodic_point_count(decomposable_matrix(), 8));
  CHECK_FALSE(periodic_point_count(identity<Integer>(4), 1));
  CHECK_THROWS_AS(periodic_point_count(ph_matrix(), 0), std::invalid_argument);

  for (unsigned n = 1; n <= 12; ++n) {
    const auto c = periodic_point_count(ph_matrix(), n);
    REQUIRE(c);
    const IntMatrix d = schoolbook_product(power(ph_matrix(), n - 1), ph_matrix()) - identity<Integer>(4);
    CHECK(*c == abs_value(cofactor_det(d)));
    CHECK(std::abs(c->convert_to<double>() - eigen_count(ph_matrix(), n)) < 1e-6 * (1 + eigen_count(ph_matrix(), n)));
  }
}

TEST_CASE("Weyl sums follow the geometric-sum closed form") {
  EquidistributionConfig cfg;
  cfg.samples = 20000;
  cfg.mode_box = 2;
  cfg.threads = 2;
  for (const IntMatrix& a : {ph_matrix(), decomposable_matrix()}) {
    const EigenData ed = eigen_data(a);
    const ResonanceLattice rl = resonance_lattice(ed);
    const std::vector<WeylReport> reports = leaf_equidistribution(ed, rl, cfg);
    CHECK(reports.size() == 5 * 5 * 5 * 5 - 1);
    PrecisionScope scope(40);
    const Real pi = mp::atan(Real(1)) * 4;
    for (const WeylReport& r : reports) {
      CHECK(r.N == cfg.samples);
      CHECK(r.resonant_predicted == rl.lattice.contains(r.m));
      Real dot = 0;
      for (Eigen::Index j = 0; j < 4; ++j) dot += Real(r.m(j)) * ed.gamma[static_cast<std::size_t>(j)].re;
      const Real theta = dot * Real(cfg.step);
      const Real s = mp::abs(mp::sin(pi * theta));
      const double n = static_cast<double>(cfg.samples);
      if (r.resonant_predicted) {
        CHECK(std::abs(r.S_N - 1.0) < 1e-12);
        continue;
      }
      const double closed = mp::abs(mp::sin(pi * theta * Real(cfg.samples)) / (Real(cfg.samples) * s)).convert_to<double>();
      const double bound = std::min(1.0, 1.0 / (n * s.convert_to<double>()));
      CHECK(r.S_N <= bound + 1e-9);
      CHECK(std::abs(r.S_N - closed) < 1e-9);
      CHECK(r.consistent(cfg));
    }
  }
}

TEST_CASE("Weyl sums: ordering and argument checks") {
  const EigenData ed = eigen_data(decomposable_matrix());
  const ResonanceLattice rl = resonance_lattice(ed);
  EquidistributionConfig cfg;
  cfg.samples = 1000;
  cfg.mode_box = 1;
  const std::vector<WeylReport> r = leaf_equidistribution(ed, rl, cfg);
  REQUIRE(r.size() == 80);
  CHECK(r.front().m == vec({-1, -1, -1, -1}));
  CHECK(r.back().m == vec({1, 1, 1, 1}));
  for (std::size_t i = 1; i < r.size(); ++i) {
    bool less = false;
    for (Eigen::Index j = 0; j < 4; ++j)
      if (r[i - 1].m(j) != r[i].m(j)) {
        less = r[i - 1].m(j) < r[i].m(j);
        break;
      }
    CHECK(less);
  }
  // Thread count does not change the result.
  cfg.threads = 1;
  const std::vector<WeylReport> one = leaf_equidistribution(ed, rl, cfg);
  cfg.threads = 3;
  const std::vector<WeylReport> three = leaf_equidistribution(ed, rl, cfg);
  for (std::size_t i = 0; i < one.size(); ++i) CHECK(one[i].S_N == three[i].S_N);

  cfg.samples = 999;
  CHECK_THROWS_AS(leaf_equidistribution(ed, rl, cfg), std::invalid_argument);
  cfg.samples = 1000;
  cfg.mode_box = 0;
  CHECK_THROWS_AS(leaf_equidistribution(ed, rl, cfg), std::invalid_argument);
  cfg.mode_box = 1;
  const EigenData focus = eigen_data(saddle_focus());
  CHECK_THROWS_AS(leaf_equidistribution(focus, resonance_lattice(focus), cfg), std::domain_error);
  // A lattice that contradicts the exact test is rejected.
  CHECK_THROWS_AS(leaf_equidistribution(eigen_data(ph_matrix()), rl, cfg), InvariantViolation);
}
