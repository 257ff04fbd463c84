#include "support.hpp"

#include "toral/symplectic.hpp"

#include <doctest.h>

using namespace toral;
using namespace toral::test;

namespace {

IntMatrix closed_form_j(long a) { return mat({{0, 0, 1, 0}, {0, 0, a, 1}, {-1, -a, 0, 0}, {0, -1, 0, 0}}); }

bool equal_up_to_sign(const IntMatrix& x, const IntMatrix& y) { return x == y || x == IntMatrix(-y); }

}  // namespace

TEST_CASE("check_form examples") {
  CHECK(check_form(ph_matrix(), ph_form()));
  CHECK(check_form(identity<Integer>(4), standard_form()));
  CHECK_FALSE(check_form(ph_matrix(), standard_form()));
  CHECK_THROWS_AS(check_form(ph_matrix(), identity<Integer>(4)), std::invalid_argument);
  CHECK_THROWS_AS(check_form(ph_matrix(), IntMatrix::Zero(4, 4)), std::invalid_argument);
}

TEST_CASE("Pfaffian of the displayed form") {
  CHECK(pfaffian(ph_form()) == -1);
  CHECK(determinant(ph_form()) == 1);
  CHECK(pfaffian(standard_form()) == -1);
}

TEST_CASE("check_form is invariant under scaling the form") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const IntMatrix u = random_unimodular(rng);
    const IntMatrix a = conjugate(u, ph_matrix());
    const InvariantFormResult r = solve_invariant_form(a);
    REQUIRE(r.form);
    for (long c : {-3L, -1L, 2L, 5L}) CHECK(check_form(a, IntMatrix(Integer(c) * r.form->J)) == true);
    CHECK(check_form(a, standard_form()) == check_form(a, IntMatrix(-standard_form())));
  }
}

TEST_CASE("companion matrices recover the closed-form J") {
  for (long a = -6; a <= 6; ++a)
    for (long b = -6; b <= 10; ++b) {
      const IntMatrix c = companion_of(poly_desc({1, a, b, a, 1}));
      const InvariantFormResult r = solve_invariant_form(c);
      REQUIRE(r.form);
      CHECK(r.solution_dimension >= 2);
      CHECK(equal_up_to_sign(r.form->J, closed_form_j(a)));
      CHECK(check_form(c, r.form->J));
    }
}

TEST_CASE("block diagonal input gives the block form") {
  const InvariantFormResult r = solve_invariant_form(decomposable_matrix());
  REQUIRE(r.form);
  CHECK(r.form->J == mat({{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}}));
}

TEST_CASE("conjugated inputs: form found, pulled-back form lies in the solution lattice") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const IntMatrix u = random_unimodular(rng);
    const IntMatrix& a = trial % 2 ? ph_matrix() : decomposable_matrix();
    const IntMatrix b = conjugate(u, a);
    const InvariantFormResult r = solve_invariant_form(b);
    REQUIRE(r.form);
    CHECK(check_form(b, r.form->J));
    const IntMatrix pulled = u.transpose() * r.form->J * u;
    CHECK(check_form(a, pulled));
    CHECK(invariant_form_lattice(a).contains(skew_coordinates(pulled)));
    // Normalization contract.
    const IntVector coords = skew_coordinates(r.form->J);
    CHECK(content(coords) == 1);
    Eigen::Index first = 0;
    while (coords(first) == 0) ++first;
    CHECK(coords(first) > 0);
  }
}

TEST_CASE("no form: the two failure outcomes are distinguished") {
  const IntMatrix nonreciprocal = mat({{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 1, 0, 0}});
  const InvariantFormResult none = solve_invariant_form(nonreciprocal);
  CHECK_FALSE(none.form);
  CHECK(none.outcome == FormSearchOutcome::no_nonzero_solution);
  CHECK(none.solution_dimension == 0);

  // Cat map next to an orientation-reversing swap: only the degenerate block form survives.
  const IntMatrix swap = mat({{2, 1, 0, 0}, {1, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
  const InvariantFormResult degenerate = solve_invariant_form(swap);
  CHECK_FALSE(degenerate.form);
  CHECK(degenerate.outcome == FormSearchOutcome::all_degenerate_in_box);
  CHECK(degenerate.solution_dimension == 1);

  CHECK_THROWS_AS(solve_invariant_form(ph_matrix(), 0), std::invalid_argument);
}

TEST_CASE("skew coordinates roundtrip and normalization") {
  const IntVector u = vec({0, 1, 0, -3, 1, 0});
  CHECK(skew_from_coordinates(u) == ph_form());
  CHECK(skew_coordinates(ph_form()) == u);
  const SymplecticForm f = SymplecticForm::from_matrix(IntMatrix(Integer(-2) * ph_form())).normalized();
  CHECK(f.J == ph_form());
  CHECK_THROWS_AS(SymplecticForm::from_matrix(identity<Integer>(4)), std::invalid_argument);
}
