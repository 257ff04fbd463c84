// End-to-end acceptance run: one PASS/FAIL line per criterion, each with its
// wall-clock budget. Exit status is nonzero if any criterion fails.
#include "support.hpp"

#include "toral/dynamics.hpp"
#include "toral/io.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

using namespace toral;
using namespace toral::test;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<Outcome()> run;
};

Real ten_to(int e) { return mp::pow(Real(10), e); }

IntMatrix corrected_closed_form_j(long a) { return mat({{0, 0, 1, 0}, {0, 0, a, 1}, {-1, -a, 0, 0}, {0, -1, 0, 0}}); }
IntMatrix displayed_closed_form_j(long a) { return mat({{0, 0, 1, 0}, {0, 0, -a, 1}, {-1, a, 0, 0}, {0, -1, 0, 0}}); }

bool same_up_to_sign(const IntMatrix& x, const IntMatrix& y) { return x == y || x == IntMatrix(-y); }

bool witness_holds(const IntMatrix& t, const IntMatrix& a, const IntMatrix& a2) {
  return abs_value(cofactor_det(t)) == 1 && schoolbook_product(schoolbook_product(t, a), adjugate_inverse(t)) == a2;
}

Outcome ph_fixture() {
  Outcome o;
  const ClassificationReport r = classify(ph_matrix(), ClassifyOptions{50, 3, 10});
  PrecisionScope scope(100);
  const Real s5 = mp::sqrt(Real(5));
  const Real expected = mp::log((3 + s5 + mp::sqrt(6 * s5 - 2)) / 4);
  const Real err = mp::abs(r.entropy.value - expected);
  const bool ph = r.spectral_type == SpectralType::partially_hyperbolic;
  const bool j_ok = r.form.form && same_up_to_sign(r.form.form->J, ph_form());
  o.pass = ph && r.ergodicity.ergodic && r.transitive == std::optional<bool>(true) && j_ok && err < ten_to(-40);
  std::ostringstream d;
  d << "type=" << (r.spectral_type ? to_string(*r.spectral_type) : "none") << " ergodic=" << r.ergodicity.ergodic
    << " transitive=" << (r.transitive && *r.transitive) << " J=" << (j_ok ? "match" : "MISMATCH")
    << " |h-h*|=" << err.str(3, std::ios::scientific);
  o.detail = d.str();
  return o;
}

Outcome general_j_family() {
  Outcome o;
  const std::vector<std::pair<long, long>> pairs = {{-3, 3}, {3, 3},   {-4, 5}, {-5, 6}, {5, 6},
                                                    {-2, -1}, {1, -2}, {-6, 9}, {2, -3}, {4, 4}};
  int matched = 0, displayed = 0;
  for (const auto& [a, b] : pairs) {
    const IntMatrix c = companion_of(poly_desc({1, a, b, a, 1}));
    if (spectral_classify(char_poly(c)) != SpectralType::partially_hyperbolic) {
      o.pass = false;
      o.detail += " (" + std::to_string(a) + "," + std::to_string(b) + ") not PH;";
      continue;
    }
    const InvariantFormResult r = solve_invariant_form(c);
    const bool ok = r.form && check_form(c, r.form->J) && same_up_to_sign(r.form->J, corrected_closed_form_j(a));
    if (ok) ++matched;
    else o.pass = false;
    if (check_form(c, displayed_closed_form_j(a))) ++displayed;
  }
  o.detail = std::to_string(matched) + "/10 match J(1,2) = a and check_form; the J(1,2) = -a variant is invariant for " +
             std::to_string(displayed) + "/10" + o.detail;
  return o;
}

// Oracle factorization: trial division by x -+ 1 and by x^2 + p x + q, q = +-1, |p| <= 22.
using SmallPoly = std::vector<long long>;  // ascending

long long eval(const SmallPoly& p, long long x) {
  long long v = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
  return v;
}

std::optional<SmallPoly> divide_exact(const SmallPoly& p, const SmallPoly& d) {
  SmallPoly rem = p;
  const std::size_t dd = d.size() - 1;
  SmallPoly q(p.size() - dd, 0);
  for (std::size_t i = p.size() - 1; i + 1 > dd; --i) {
    const long long c = rem[i];
    q[i - dd] = c;
    for (std::size_t j = 0; j <= dd; ++j) rem[i - dd + j] -= c * d[j];
    if (i == dd) break;
  }
  for (std::size_t i = 0; i < dd; ++i)
    if (rem[i] != 0) return std::nullopt;
  return q;
}

std::map<SmallPoly, int> oracle_factors(SmallPoly p) {
  std::map<SmallPoly, int> out;
  for (long long r : {1LL, -1LL})
    while (p.size() > 1 && eval(p, r) == 0) {
      p = *divide_exact(p, {-r, 1});
      ++out[{-r, 1}];
    }
  if (p.size() == 5) {
    for (long long q : {1LL, -1LL})
      for (long long s = -22; s <= 22; ++s)
        if (auto quot = divide_exact(p, {q, s, 1})) {
          ++out[{q, s, 1}];
          ++out[*quot];
          return out;
        }
  }
  if (p.size() > 1) ++out[p];
  return out;
}

Outcome factorization_sweep() {
  Outcome o;
  long cases = 0, bad = 0;
  for (long a = -10; a <= 10; ++a)
    for (long b = -10; b <= 10; ++b)
      for (long c = -10; c <= 10; ++c)
        for (long d : {-1L, 1L}) {
          ++cases;
          const IntPolynomial p = poly_desc({1, a, b, c, d});
          const Factorization f = factor_monic_quartic(p);
          std::map<SmallPoly, int> got;
          for (const Factor& fac : f.factors) {
            SmallPoly sp;
            for (int i = 0; i <= fac.poly.degree(); ++i) sp.push_back(fac.poly.coefficient(i).convert_to<long long>());
            got[sp] += fac.multiplicity;
          }
          if (!(f.product() == p) || got != oracle_factors({d, c, b, a, 1})) {
            if (bad < 5) o.detail += " mismatch at (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + "," + std::to_string(d) + ")";
            ++bad;
          }
        }
  o.pass = bad == 0;
  o.detail = std::to_string(cases - bad) + "/" + std::to_string(cases) + " agree" + o.detail;
  return o;
}

bool is_square(long n) {
  if (n < 0) return false;
  long r = static_cast<long>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r * r == n;
}

Outcome dichotomy() {
  Outcome o;
  std::mt19937_64 rng(4004);
  std::uniform_int_distribution<int> coeff(-8, 8), unit(-1, 1), outer(3, 8), sign(0, 1);
  int done = 0, failures = 0, irreducible = 0;
  while (done < 200) {
    int p, q;
    if (done % 2 == 0) {
      p = coeff(rng);
      q = coeff(rng);
      if (is_square(static_cast<long>(p) * p - 4L * q)) continue;
    } else {
      const int s = unit(rng);
      const int t = sign(rng) ? outer(rng) : -outer(rng);
      p = -(s + t);
      q = s * t;
    }
    const IntPolynomial chi = lift_quadratic(p, q);
    if (spectral_classify(chi) != SpectralType::partially_hyperbolic) continue;
    const IntMatrix a = conjugate(random_unimodular(rng), companion_of(chi));
    const bool irr = factor_monic_quartic(char_poly(a)).irreducible();
    const Eigen::Index ru = resonance_lattice(eigen_data(a, Branch::unstable)).rank();
    const Eigen::Index rs = resonance_lattice(eigen_data(a, Branch::stable)).rank();
    const bool ok = (ru == 0 || ru == 2) && ru == rs && ((ru == 0) == irr);
    if (!ok) ++failures;
    if (irr) ++irreducible;
    ++done;
  }
  o.pass = failures == 0;
  o.detail = std::to_string(200 - failures) + "/200 consistent (" + std::to_string(irreducible) + " irreducible)";
  return o;
}

Outcome conjugacy_roundtrip() {
  Outcome o;
  std::mt19937_64 rng(5005);
  int conj = 0, undecided = 0, other = 0;
  for (int i = 0; i < 50; ++i) {
    const IntMatrix b = conjugate(random_unimodular(rng), ph_matrix());
    const ConjugacyVerdict v = decide_conjugacy(ph_matrix(), b, 10);
    if (v.kind == ConjugacyKind::undecided) {
      ++undecided;
      std::fprintf(stderr, "criterion 5: undecided for\n%s", format_matrix(b).c_str());
    } else if (v.kind == ConjugacyKind::conjugate && v.witness && witness_holds(*v.witness, ph_matrix(), b)) {
      ++conj;
    } else {
      ++other;
    }
  }
  o.pass = conj == 50;
  o.detail = std::to_string(conj) + "/50 verified, " + std::to_string(undecided) + " undecided, " + std::to_string(other) + " other";
  return o;
}

Outcome decomposable_recovery() {
  Outcome o;
  std::mt19937_64 rng(6006);
  int ok = 0;
  for (int i = 0; i < 50; ++i) {
    const int k = std::array<int, 3>{3, 4, 6}[static_cast<std::size_t>(i % 3)];
    const IntMatrix a = conjugate(random_unimodular(rng), block_diagonal(mat({{2, 1}, {1, 1}}), rotation_block(k)));
    const Decomposition d = split_decomposable(a, 10);
    const bool good = d.k == k && power(d.R_block, static_cast<unsigned long>(k)) == identity<Integer>(2) &&
                      abs_value(Integer(d.H_block.trace())) > 2 && abs_value(cofactor_det(d.H_block)) == 1;
    if (good) ++ok;
  }
  o.pass = ok == 50;
  o.detail = std::to_string(ok) + "/50 recovered";
  return o;
}

Outcome ergodicity_triangulation() {
  Outcome o;
  int agree = 0, total = 0;
  for (const auto& entry : std::filesystem::directory_iterator(fixture_dir())) {
    if (entry.path().extension() != ".mat") continue;
    ++total;
    const IntMatrix a = read_matrix_file(entry.path().string()).matrix;
    const bool cyclotomic_free = ergodicity_test(a).ergodic;
    bool no_cycle = true;
    for (int i = 0; i < 625 && no_cycle; ++i) {
      const IntVector m = vec({i / 125 % 5 - 2, i / 25 % 5 - 2, i / 5 % 5 - 2, i % 5 - 2});
      if (m.isZero()) continue;
      no_cycle = !dual_orbit_test(a, m, 10000).periodic();
    }
    bool counts_nonzero = true;
    for (unsigned n = 1; n <= 24 && counts_nonzero; ++n) counts_nonzero = periodic_point_count(a, n).has_value();
    if (cyclotomic_free == no_cycle && no_cycle == counts_nonzero) ++agree;
    else o.detail += " disagreement on " + entry.path().filename().string();
  }
  o.pass = agree == total && total > 0;
  o.detail = std::to_string(agree) + "/" + std::to_string(total) + " fixtures agree" + o.detail;
  return o;
}

Outcome equidistribution_bridge() {
  Outcome o;
  EquidistributionConfig cfg;
  cfg.samples = 1'000'000;
  cfg.mode_box = 3;
  int consistent = 0, total = 0, resonant = 0;
  double worst_nonresonant = 0;
  for (const IntMatrix& a : {ph_matrix(), decomposable_matrix()}) {
    const EigenData ed = eigen_data(a);
    for (const WeylReport& r : leaf_equidistribution(ed, resonance_lattice(ed), cfg)) {
      ++total;
      if (r.consistent(cfg)) ++consistent;
      if (r.resonant_predicted) ++resonant;
      else worst_nonresonant = std::max(worst_nonresonant, r.S_N);
    }
  }
  o.pass = consistent == total;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d/%d modes consistent (%d resonant), max nonresonant |S_N| = %.2e", consistent, total,
                resonant, worst_nonresonant);
  o.detail = buf;
  return o;
}

// Oracle: dense eigenvalues of the companion matrix at 80 digits.
Real oracle_entropy(const IntPolynomial& chi) {
  const IntMatrix c = companion_of(chi);
  RealMatrix m(4, 4);
  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index j = 0; j < 4; ++j) m(i, j) = Real(c(i, j));
  Eigen::EigenSolver<RealMatrix> es(m, false);
  Real h = 0;
  for (Eigen::Index i = 0; i < 4; ++i) {
    const auto z = es.eigenvalues()(i);
    const Real r = mp::sqrt(z.real() * z.real() + z.imag() * z.imag());
    if (r > 1) h += mp::log(r);
  }
  return h;
}

Outcome entropy_cross_validation() {
  Outcome o;
  std::mt19937_64 rng(9009);
  std::uniform_int_distribution<int> coeff(-12, 12);
  int agree = 0, done = 0;
  Real worst = 0;
  while (done < 100) {
    const int a = coeff(rng), b = coeff(rng);
    const IntPolynomial p = poly_desc({1, a, b, a, 1});
    const SpectralType t = spectral_classify(p);
    if (t == SpectralType::elliptic || t == SpectralType::parabolic) continue;
    const IntMatrix m = conjugate(random_unimodular(rng), companion_of(p));
    const EntropyValue h = entropy(m, 50);
    PrecisionScope scope(80);
    const Real err = mp::abs(h.value - oracle_entropy(p));
    if (err > worst) worst = err;
    if (err < ten_to(-30)) ++agree;
    ++done;
  }
  const bool id_zero = entropy(identity<Integer>(4)).exact_zero;
  const bool ell_zero = entropy(read_matrix_file((fixture_dir() / "elliptic.mat").string()).matrix).exact_zero &&
                        entropy(read_matrix_file((fixture_dir() / "elliptic_square.mat").string()).matrix).exact_zero;
  o.pass = agree == 100 && id_zero && ell_zero;
  o.detail = std::to_string(agree) + "/100 within 1e-30 (worst " + worst.str(3, std::ios::scientific) +
             "), identity zero=" + (id_zero ? "yes" : "no") + ", elliptic zero=" + (ell_zero ? "yes" : "no");
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "partially hyperbolic fixture", 1, ph_fixture},
      {2, "general J family", 1, general_j_family},
      {3, "factorization oracle sweep", 60, factorization_sweep},
      {4, "resonance dichotomy", 30, dichotomy},
      {5, "conjugacy roundtrip", 60, conjugacy_roundtrip},
      {6, "decomposable recovery", 60, decomposable_recovery},
      {7, "ergodicity triangulation", 30, ergodicity_triangulation},
      {8, "equidistribution bridge", 120, equidistribution_bridge},
      {9, "entropy cross-validation", 10, entropy_cross_validation},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.budget_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::printf("[%s] criterion %d: %s: %s (%.2f s, limit %.0f s%s)\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                o.detail.c_str(), secs, c.budget_s, in_time ? "" : ", OVER TIME");
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
