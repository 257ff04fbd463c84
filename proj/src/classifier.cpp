#include "toral/classifier.hpp"

#include <sstream>

namespace toral {

namespace {

constexpr unsigned kGuardDigits = 20;

void require_automorphism(const IntMatrix& a, const char* who) {
  if (a.rows() != 4 || a.cols() != 4) throw std::invalid_argument(std::string(who) + ": expected a 4x4 matrix");
  const Integer d = determinant(a);
  if (d != 1 && d != -1)
    throw std::invalid_argument(std::string(who) + ": determinant is " + d.str() + ", expected +1 or -1");
}

// s * sqrt(d) > k, exactly (d >= 0, s = +-1).
bool signed_sqrt_greater(int s, const Integer& d, const Integer& k) {
  if (s > 0) return k < 0 || d > k * k;
  return k < 0 && d < k * k;
}

bool signed_sqrt_less(int s, const Integer& d, const Integer& k) { return signed_sqrt_greater(-s, d, Integer(-k)); }

// Log of the expanding eigenvalue attached to one mu-root; zero on the circle.
Real expanding_log(const Complex& mu) {
  const Complex r = sqrt(mu * mu - Complex(Real(4)));
  const Complex half(Real(Real(1) / 2));
  Complex lam = (mu + r) * half;
  if (abs(lam) < 1) lam = (mu - r) * half;
  return mp::log(abs(lam));
}

bool is_small_cyclotomic(const IntPolynomial& q) {
  for (int k : small_cyclotomic_orders())
    if (cyclotomic(k) == q) return true;
  return false;
}

// Arithmetic in Q[x]/(m) for an irreducible monic m.
class NumberField {
 public:
  explicit NumberField(const IntPolynomial& m) : m_(to_rational(m)) {}

  RatPolynomial reduce(const RatPolynomial& p) const { return p.divmod(m_).second; }
  RatPolynomial mul(const RatPolynomial& a, const RatPolynomial& b) const { return reduce(a * b); }

  RatPolynomial inverse(const RatPolynomial& p) const {
    if (p.is_zero()) throw std::domain_error("NumberField: inverse of zero");
    RatPolynomial r0 = m_, r1 = reduce(p), s0, s1{Rational(1)};
    while (!r1.is_zero()) {
      auto [q, r] = r0.divmod(r1);
      r0 = std::move(r1);
      r1 = std::move(r);
      RatPolynomial next = s0 - q * s1;
      s0 = std::move(s1);
      s1 = std::move(next);
    }
    if (r0.degree() != 0) throw std::domain_error("NumberField: modulus is not irreducible");
    return reduce(Rational(1 / r0.coefficient(0)) * s0);
  }

 private:
  RatPolynomial m_;
};

// Kernel vector of A - x E over Q[x]/(m), first nonzero coordinate 1.
std::vector<RatPolynomial> field_eigenvector(const IntMatrix& a, const IntPolynomial& minpoly) {
  const NumberField k(minpoly);
  const Eigen::Index n = a.rows();
  std::vector<std::vector<RatPolynomial>> m(static_cast<std::size_t>(n), std::vector<RatPolynomial>(static_cast<std::size_t>(n)));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      RatPolynomial e{Rational(a(i, j))};
      if (i == j) e = e - RatPolynomial{Rational(0), Rational(1)};
      m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = k.reduce(e);
    }

  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t c = 0; c < static_cast<std::size_t>(n) && row < m.size(); ++c) {
    std::size_t p = row;
    while (p < m.size() && m[p][c].is_zero()) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    const RatPolynomial inv = k.inverse(m[row][c]);
    for (auto& e : m[row]) e = k.mul(e, inv);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == row || m[i][c].is_zero()) continue;
      const RatPolynomial f = m[i][c];
      for (std::size_t j = 0; j < m[i].size(); ++j) m[i][j] = k.reduce(m[i][j] - f * m[row][j]);
    }
    pivot_cols.push_back(c);
    ++row;
  }

  std::size_t free = 0;
  while (free < pivot_cols.size() && pivot_cols[free] == free) ++free;
  if (free == static_cast<std::size_t>(n)) throw InvariantViolation("eigen_data: A - lambda E is nonsingular");

  std::vector<RatPolynomial> v(static_cast<std::size_t>(n));
  v[free] = RatPolynomial{Rational(1)};
  for (std::size_t r = 0; r < pivot_cols.size(); ++r) v[pivot_cols[r]] = Rational(-1) * m[r][free];

  std::size_t lead = 0;
  while (v[lead].is_zero()) ++lead;
  const RatPolynomial scale = k.inverse(v[lead]);
  for (auto& e : v) e = k.mul(e, scale);

  // A v = x v must hold exactly in the field.
  for (Eigen::Index i = 0; i < n; ++i) {
    RatPolynomial lhs;
    for (Eigen::Index j = 0; j < n; ++j) lhs += Rational(a(i, j)) * v[static_cast<std::size_t>(j)];
    const RatPolynomial rhs = k.mul(RatPolynomial{Rational(0), Rational(1)}, v[static_cast<std::size_t>(i)]);
    if (!k.reduce(lhs - rhs).is_zero()) throw InvariantViolation("eigen_data: eigenvector check failed");
  }
  return v;
}

struct RootRef {
  Complex z;
  Real modulus;
  std::size_t factor;
};

// Dominant (or weakest) root over all irreducible factors, with a fixed
// tie-break: positive real part first, then nonnegative imaginary part.
RootRef select_root(const Factorization& f, Branch branch, unsigned digits) {
  std::optional<RootRef> best;
  const Real tie = mp::pow(Real(10), -static_cast<int>(digits / 2));
  for (std::size_t i = 0; i < f.factors.size(); ++i) {
    const IntPolynomial& q = f.factors[i].poly;
    if (is_small_cyclotomic(q)) continue;
    for (Complex& z : squarefree_roots(q, digits)) {
      RootRef r{z, abs(z), i};
      if (!best) {
        best = std::move(r);
        continue;
      }
      const Real diff = branch == Branch::unstable ? Real(r.modulus - best->modulus) : Real(best->modulus - r.modulus);
      bool better = diff > tie;
      if (!better && mp::abs(diff) <= tie) {
        if (mp::abs(r.z.re - best->z.re) > tie) better = r.z.re > best->z.re;
        else better = r.z.im > best->z.im;
      }
      if (better) best = std::move(r);
    }
  }
  if (!best) throw std::domain_error("eigen_data: every eigenvalue is a root of unity");
  const bool off_circle = branch == Branch::unstable ? best->modulus > 1 + tie : best->modulus < 1 - tie;
  if (!off_circle) throw std::domain_error("eigen_data: no eigenvalue off the unit circle");
  return *best;
}

Complex evaluate_rational(const RatMatrix& coords, Eigen::Index row, const Complex& z) {
  Complex acc;
  for (Eigen::Index i = coords.cols() - 1; i >= 0; --i) {
    const Rational& c = coords(row, i);
    acc = acc * z + Complex(Real(Real(numerator_of(c)) / Real(denominator_of(c))));
  }
  return acc;
}

}  // namespace

std::string to_string(SpectralType t) {
  switch (t) {
    case SpectralType::anosov_saddle: return "anosov_saddle";
    case SpectralType::anosov_saddle_focus: return "anosov_saddle_focus";
    case SpectralType::partially_hyperbolic: return "partially_hyperbolic";
    case SpectralType::elliptic: return "elliptic";
    case SpectralType::parabolic: return "parabolic";
  }
  return "unknown";
}

SpectralType spectral_classify(const IntPolynomial& p) {
  const MuQuadratic q = mu_reduce(p);
  const Integer f_plus = 4 + 2 * q.a + q.c;
  const Integer f_minus = 4 - 2 * q.a + q.c;
  if (f_plus == 0 || f_minus == 0) return SpectralType::parabolic;
  if (q.discriminant() < 0) return SpectralType::anosov_saddle_focus;
  if ((f_plus > 0) != (f_minus > 0)) return SpectralType::partially_hyperbolic;
  if (f_plus > 0 && abs_value(q.a) < 4) return SpectralType::elliptic;
  return SpectralType::anosov_saddle;
}

bool has_expanding_direction(SpectralType t) {
  return t == SpectralType::anosov_saddle || t == SpectralType::anosov_saddle_focus ||
         t == SpectralType::partially_hyperbolic;
}

std::string ErgodicityVerdict::certificate() const {
  if (orders.empty()) return "no cyclotomic factor";
  std::ostringstream os;
  os << "cyclotomic factor orders {";
  for (std::size_t i = 0; i < orders.size(); ++i) os << (i ? "," : "") << orders[i];
  os << "}";
  return os.str();
}

ErgodicityVerdict ergodicity_test(const IntMatrix& a) {
  ErgodicityVerdict v;
  v.orders = cyclotomic_orders(char_poly(a));
  v.ergodic = v.orders.empty();
  return v;
}

std::string EntropyValue::decimal() const {
  if (exact_zero) return fixed_string(Real(0), digits);
  return fixed_string(value, digits);
}

std::string EntropyValue::bound() const { return exact_zero ? "0" : "1e-" + std::to_string(digits); }

EntropyValue entropy(const IntMatrix& a, unsigned digits) {
  require_automorphism(a, "entropy");
  PrecisionScope scope(digits + kGuardDigits);
  EntropyValue out;
  out.digits = digits;
  out.value = Real(0);
  const IntPolynomial chi = char_poly(a);

  if (reciprocal_coefficients(chi)) {
    const MuQuadratic q = mu_reduce(chi);
    const Integer d = q.discriminant();
    if (d < 0) {
      const Complex mu(Real(Real(-q.a) / 2), Real(mp::sqrt(Real(-d)) / 2));
      out.value = 2 * expanding_log(mu);
    } else {
      for (int s : {1, -1}) {
        const bool outside = signed_sqrt_greater(s, d, Integer(q.a + 4)) || signed_sqrt_less(s, d, Integer(q.a - 4));
        if (!outside) continue;
        const Real mu = (Real(-q.a) + s * mp::sqrt(Real(d))) / 2;
        out.value += expanding_log(Complex(mu));
      }
    }
  } else {
    const Factorization f = factor_monic_quartic(chi);
    for (const Factor& fac : f.factors) {
      if (is_small_cyclotomic(fac.poly)) continue;
      for (const Complex& z : squarefree_roots(fac.poly, digits + kGuardDigits)) {
        const Real m = abs(z);
        if (m > 1) out.value += fac.multiplicity * mp::log(m);
      }
    }
  }
  out.exact_zero = out.value == 0;
  return out;
}

EigenData eigen_data(const IntMatrix& a, Branch branch, unsigned digits) {
  require_automorphism(a, "eigen_data");
  const IntPolynomial chi = char_poly(a);
  if (reciprocal_coefficients(chi) && !has_expanding_direction(spectral_classify(chi)))
    throw std::domain_error("eigen_data: spectrum is " + to_string(spectral_classify(chi)));

  PrecisionScope scope(digits + kGuardDigits);
  const Factorization f = factor_monic_quartic(chi);
  const RootRef root = select_root(f, branch, digits + kGuardDigits);

  EigenData ed;
  ed.branch = branch;
  ed.digits = digits;
  ed.minimal_polynomial = f.factors[root.factor].poly;
  ed.lambda = root.z;
  const std::vector<RatPolynomial> v = field_eigenvector(a, ed.minimal_polynomial);
  const Eigen::Index d = ed.minimal_polynomial.degree();
  ed.coordinates = RatMatrix::Zero(4, d);
  for (Eigen::Index j = 0; j < 4; ++j)
    for (Eigen::Index i = 0; i < d; ++i) ed.coordinates(j, i) = v[static_cast<std::size_t>(j)].coefficient(static_cast<std::size_t>(i));
  for (Eigen::Index j = 0; j < 4; ++j) ed.gamma.push_back(evaluate_rational(ed.coordinates, j, ed.lambda));

  if (reciprocal_coefficients(chi) && spectral_classify(chi) == SpectralType::partially_hyperbolic) {
    const MuQuadratic q = mu_reduce(chi);
    const Real r = mp::sqrt(Real(q.discriminant()));
    Real mu = (Real(-q.a) + r) / 2;
    if (mp::abs(mu) >= 2) mu = (Real(-q.a) - r) / 2;
    ed.alpha = mp::acos(Real(mu / 2));
  }
  return ed;
}

ResonanceLattice resonance_lattice(const EigenData& ed) {
  const Eigen::Index d = ed.degree();
  IntMatrix rows(d, 4);
  for (Eigen::Index i = 0; i < d; ++i) {
    RatVector c = ed.coordinates.col(i);
    const IntVector p = primitive_integer_vector(c);
    rows.row(i) = p.transpose();
  }
  return ResonanceLattice{saturated_integer_kernel(rows)};
}

bool is_resonant(const EigenData& ed, const IntVector& m) {
  if (m.size() != 4) throw std::invalid_argument("is_resonant: expected a 4-vector");
  for (Eigen::Index i = 0; i < ed.degree(); ++i) {
    Rational s(0);
    for (Eigen::Index j = 0; j < 4; ++j) s += Rational(m(j)) * ed.coordinates(j, i);
    if (s != 0) return false;
  }
  return true;
}

ClassificationReport classify(const IntMatrix& a, const ClassifyOptions& options) {
  require_automorphism(a, "classify");
  ClassificationReport r;
  r.options = options;
  r.input = a;
  r.det = determinant(a);
  r.form = solve_invariant_form(a, options.form_box);
  r.char_poly = char_poly(a);
  r.factorization = factor_monic_quartic(r.char_poly);
  if (r.factorization.product() != r.char_poly) throw InvariantViolation("classify: factorization does not multiply back");
  if (reciprocal_coefficients(r.char_poly)) r.spectral_type = spectral_classify(r.char_poly);
  r.ergodicity = ergodicity_test(a);
  r.entropy = entropy(a, options.digits);

  const bool has_expansion = r.spectral_type ? has_expanding_direction(*r.spectral_type) : !r.entropy.exact_zero;
  if (has_expansion) {
    r.unstable = eigen_data(a, Branch::unstable, options.digits);
    r.stable = eigen_data(a, Branch::stable, options.digits);
    r.resonance_unstable = resonance_lattice(*r.unstable);
    r.resonance_stable = resonance_lattice(*r.stable);
  }

  if (r.spectral_type == SpectralType::partially_hyperbolic) {
    const Eigen::Index ru = r.resonance_unstable->rank();
    const Eigen::Index rs = r.resonance_stable->rank();
    const bool irreducible = r.factorization.irreducible();
    if (ru != 0 && ru != 2) throw InvariantViolation("classify: resonance rank " + std::to_string(ru) + " outside {0, 2}");
    if (ru != rs) throw InvariantViolation("classify: stable and unstable resonance ranks differ");
    if (irreducible != (ru == 0))
      throw InvariantViolation("classify: irreducibility and resonance rank disagree on transitivity");
    r.transitive = irreducible;

    if (!irreducible) {
      try {
        r.decomposition = split_decomposable(a, options.witness_bound);
      } catch (const NotDecomposable& e) {
        throw InvariantViolation(std::string("classify: reducible partially hyperbolic input did not split: ") + e.what());
      }
      PrecisionScope scope(options.digits + kGuardDigits);
      InvariantSplitting s;
      s.W_star = r.decomposition->hyperbolic_lattice;
      s.W_c = r.decomposition->center_lattice;
      s.W_cs = RealMatrix(4, 3);
      s.W_cu = RealMatrix(4, 3);
      for (Eigen::Index j = 0; j < 4; ++j) {
        for (Eigen::Index c = 0; c < 2; ++c) {
          s.W_cs(j, c) = Real(s.W_c.rows(c, j));
          s.W_cu(j, c) = Real(s.W_c.rows(c, j));
        }
        s.W_cs(j, 2) = r.stable->gamma[static_cast<std::size_t>(j)].re;
        s.W_cu(j, 2) = r.unstable->gamma[static_cast<std::size_t>(j)].re;
      }
      r.splitting = std::move(s);
    }
  }
  return r;
}

}  // namespace toral
