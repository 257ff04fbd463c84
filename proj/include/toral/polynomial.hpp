// Dense univariate polynomials over an exact scalar, plus the quartic
// toolkit: characteristic polynomials, reciprocity, mu-reduction,
// factorization of monic integer quartics and cyclotomic detection.
#pragma once

#include "toral/scalar.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace toral {

/// Coefficients are stored in ascending degree and kept trimmed, so the
/// zero polynomial has no coefficients and degree -1.
template <typename Scalar>
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<Scalar> ascending) : c_(ascending) { trim(); }
  explicit Polynomial(std::vector<Scalar> ascending) : c_(std::move(ascending)) { trim(); }

  static Polynomial monomial(const Scalar& coeff, std::size_t degree) {
    std::vector<Scalar> c(degree + 1, Scalar(0));
    c[degree] = coeff;
    return Polynomial(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Scalar>& coefficients() const { return c_; }

  Scalar coefficient(std::size_t i) const { return i < c_.size() ? c_[i] : Scalar(0); }
  Scalar leading() const { return c_.empty() ? Scalar(0) : c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  /// Horner evaluation at any ring element that accepts scalar products.
  template <typename T>
  T operator()(const T& x) const {
    T acc = T(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = T(acc * x + T(*it));
    return acc;
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Scalar(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Scalar(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Scalar> c(a.c_.size() + b.c_.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(c));
  }
  friend Polynomial operator*(const Scalar& s, const Polynomial& p) {
    std::vector<Scalar> c = p.c_;
    for (auto& x : c) x *= s;
    return Polynomial(std::move(c));
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  /// Quotient and remainder. The divisor must be monic unless Scalar is a field.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
    if (d.is_zero()) throw std::domain_error("Polynomial::divmod: division by zero");
    std::vector<Scalar> r = c_;
    const int dd = d.degree();
    if (degree() < dd) return {Polynomial{}, *this};
    std::vector<Scalar> q(static_cast<std::size_t>(degree() - dd + 1), Scalar(0));
    const Scalar lead = d.leading();
    for (int k = degree() - dd; k >= 0; --k) {
      const std::size_t top = static_cast<std::size_t>(k + dd);
      if (r[top] == 0) continue;
      Scalar f = Scalar(r[top] / lead);
      if (Scalar(f * lead) != r[top])
        throw std::domain_error("Polynomial::divmod: inexact division over this scalar");
      q[static_cast<std::size_t>(k)] = f;
      for (int j = 0; j <= dd; ++j) r[static_cast<std::size_t>(k + j)] -= f * d.c_[static_cast<std::size_t>(j)];
    }
    return {Polynomial(std::move(q)), Polynomial(std::move(r))};
  }

  bool divisible_by(const Polynomial& d) const { return divmod(d).second.is_zero(); }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Scalar> c_;
};

using IntPolynomial = Polynomial<Integer>;
using RatPolynomial = Polynomial<Rational>;

/// p(M) for a square matrix M.
template <typename PScalar, typename MScalar>
Matrix<MScalar> evaluate_at_matrix(const Polynomial<PScalar>& p, const Matrix<MScalar>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("evaluate_at_matrix: matrix is not square");
  Matrix<MScalar> acc = Matrix<MScalar>::Zero(m.rows(), m.cols());
  const auto& c = p.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc = (acc * m).eval();
    for (Eigen::Index i = 0; i < m.rows(); ++i) acc(i, i) += MScalar(*it);
  }
  return acc;
}

/// Canonical factor order: degree first, then coefficients compared
/// lexicographically from the constant term up.
bool canonical_less(const IntPolynomial& a, const IntPolynomial& b);

/// Human-readable form such as "x^4 - 3x^3 + 3x^2 - 3x + 1".
std::string to_string(const IntPolynomial& p, const std::string& var = "x");

RatPolynomial to_rational(const IntPolynomial& p);

/// det(xE - A), computed with the Faddeev-LeVerrier recurrence (all divisions exact).
IntPolynomial char_poly(const IntMatrix& a);

struct ReciprocalCoefficients {
  Integer a;
  Integer b;
};

/// (a, b) iff p = x^4 + a x^3 + b x^2 + a x + 1.
std::optional<ReciprocalCoefficients> reciprocal_coefficients(const IntPolynomial& p);

/// t^2 + a t + (b - 2): the image of a reciprocal quartic under mu = x + 1/x.
struct MuQuadratic {
  Integer a;
  Integer c;  // b - 2

  Integer discriminant() const { return a * a - 4 * c; }
  IntPolynomial polynomial() const { return IntPolynomial{c, a, Integer(1)}; }
};

/// Throws std::invalid_argument when p is not a reciprocal monic quartic.
MuQuadratic mu_reduce(const IntPolynomial& p);

/// z^2 + p z + q  ->  x^4 + p x^3 + (q + 2) x^2 + p x + 1.
IntPolynomial lift_quadratic(const Integer& p, const Integer& q);

struct Factor {
  IntPolynomial poly;
  int multiplicity = 1;
};

struct Factorization {
  std::vector<Factor> factors;  // monic, irreducible over Q, canonical order

  IntPolynomial product() const;
  bool irreducible() const { return factors.size() == 1 && factors.front().multiplicity == 1; }
  std::string to_string(const std::string& var = "x") const;
};

/// Complete factorization of a monic integer polynomial of degree <= 4 into
/// monic irreducibles. Throws std::invalid_argument for non-monic input or
/// degree > 4.
Factorization factor_monic_quartic(const IntPolynomial& p);

/// The k-th cyclotomic polynomial.
IntPolynomial cyclotomic(int k);

/// Orders k with phi(k) <= 4, i.e. k in {1,2,3,4,5,6,8,10,12}.
const std::vector<int>& small_cyclotomic_orders();

/// All k in small_cyclotomic_orders() with Phi_k | p, ascending.
std::vector<int> cyclotomic_orders(const IntPolynomial& p);

}  // namespace toral
