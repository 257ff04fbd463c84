#include "toral/polynomial.hpp"

#include "toral/linalg.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace toral {

bool canonical_less(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  const auto& ca = a.coefficients();
  const auto& cb = b.coefficients();
  return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(), cb.end());
}

std::string to_string(const IntPolynomial& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    const Integer c = p.coefficient(static_cast<std::size_t>(i));
    if (c == 0) continue;
    const Integer mag = abs_value(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (mag != 1 || i == 0) os << mag;
    if (i >= 1) os << var;
    if (i >= 2) os << '^' << i;
    first = false;
  }
  return os.str();
}

RatPolynomial to_rational(const IntPolynomial& p) {
  std::vector<Rational> c;
  c.reserve(p.coefficients().size());
  for (const auto& x : p.coefficients()) c.emplace_back(x);
  return RatPolynomial(std::move(c));
}

IntPolynomial char_poly(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("char_poly: matrix is not square");
  const Eigen::Index n = a.rows();
  std::vector<Integer> c(static_cast<std::size_t>(n + 1), Integer(0));
  c[static_cast<std::size_t>(n)] = 1;
  IntMatrix m = IntMatrix::Zero(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    m = (a * m).eval();
    for (Eigen::Index i = 0; i < n; ++i) m(i, i) += c[static_cast<std::size_t>(n - k + 1)];
    const IntMatrix am = a * m;
    const Integer trace = am.trace();
    if (trace % k != 0) throw InvariantViolation("char_poly: inexact Faddeev-LeVerrier step");
    c[static_cast<std::size_t>(n - k)] = Integer(-trace / k);
  }
  return IntPolynomial(std::move(c));
}

std::optional<ReciprocalCoefficients> reciprocal_coefficients(const IntPolynomial& p) {
  if (p.degree() != 4 || !p.is_monic()) return std::nullopt;
  if (p.coefficient(0) != 1 || p.coefficient(1) != p.coefficient(3)) return std::nullopt;
  return ReciprocalCoefficients{p.coefficient(3), p.coefficient(2)};
}

MuQuadratic mu_reduce(const IntPolynomial& p) {
  const auto rc = reciprocal_coefficients(p);
  if (!rc) throw std::invalid_argument("mu_reduce: " + to_string(p) + " is not a reciprocal quartic");
  return MuQuadratic{rc->a, Integer(rc->b - 2)};
}

IntPolynomial lift_quadratic(const Integer& p, const Integer& q) {
  return IntPolynomial{Integer(1), p, Integer(q + 2), p, Integer(1)};
}

IntPolynomial Factorization::product() const {
  IntPolynomial acc{Integer(1)};
  for (const auto& f : factors)
    for (int i = 0; i < f.multiplicity; ++i) acc = acc * f.poly;
  return acc;
}

std::string Factorization::to_string(const std::string& var) const {
  std::ostringstream os;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) os << " * ";
    os << '(' << toral::to_string(factors[i].poly, var) << ')';
    if (factors[i].multiplicity > 1) os << '^' << factors[i].multiplicity;
  }
  return os.str();
}

namespace {

// Signed divisors of n != 0, ascending by magnitude, positive first.
std::vector<Integer> signed_divisors(const Integer& n) {
  const Integer m = abs_value(n);
  std::vector<Integer> small, large;
  for (Integer d = 1; d * d <= m; ++d) {
    if (m % d != 0) continue;
    small.push_back(d);
    if (d * d != m) large.push_back(Integer(m / d));
  }
  std::vector<Integer> out;
  for (const auto& d : small) {
    out.push_back(d);
    out.push_back(Integer(-d));
  }
  for (auto it = large.rbegin(); it != large.rend(); ++it) {
    out.push_back(*it);
    out.push_back(Integer(-*it));
  }
  return out;
}

std::optional<Integer> exact_sqrt(const Integer& d) {
  if (d < 0) return std::nullopt;
  Integer s = mp::sqrt(d);
  if (s * s != d) return std::nullopt;
  return s;
}

// Splits a monic quartic without rational roots into two monic integer
// quadratics (x^2 + p x + d)(x^2 + r x + s), d*s = c0, if possible.
std::optional<std::pair<IntPolynomial, IntPolynomial>> split_quadratic_pair(const IntPolynomial& q) {
  const Integer c0 = q.coefficient(0), c1 = q.coefficient(1), c2 = q.coefficient(2),
                c3 = q.coefficient(3);
  for (const Integer& d : signed_divisors(c0)) {
    const Integer s = c0 / d;
    if (s != d) {
      const Integer num = c1 - d * c3;
      const Integer den = s - d;
      if (num % den != 0) continue;
      const Integer p = num / den;
      const Integer r = c3 - p;
      if (d + s + p * r != c2) continue;
      return std::make_pair(IntPolynomial{d, p, Integer(1)}, IntPolynomial{s, r, Integer(1)});
    }
    if (c1 != d * c3) continue;
    // p + r = c3, p r = c2 - 2d
    const auto root = exact_sqrt(Integer(c3 * c3 - 4 * (c2 - 2 * d)));
    if (!root || (c3 + *root) % 2 != 0) continue;
    const Integer p = (c3 + *root) / 2;
    const Integer r = c3 - p;
    return std::make_pair(IntPolynomial{d, p, Integer(1)}, IntPolynomial{d, r, Integer(1)});
  }
  return std::nullopt;
}

}  // namespace

Factorization factor_monic_quartic(const IntPolynomial& p) {
  if (!p.is_monic()) throw std::invalid_argument("factor_monic_quartic: polynomial is not monic");
  if (p.degree() > 4) throw std::invalid_argument("factor_monic_quartic: degree exceeds 4");

  std::vector<IntPolynomial> pieces;
  IntPolynomial rest = p;
  for (bool found = true; found && rest.degree() >= 1;) {
    found = false;
    const Integer c0 = rest.coefficient(0);
    const std::vector<Integer> roots = c0 == 0 ? std::vector<Integer>{Integer(0)} : signed_divisors(c0);
    for (const Integer& r : roots) {
      if (rest(r) != 0) continue;
      const IntPolynomial linear{Integer(-r), Integer(1)};
      rest = rest.divmod(linear).first;
      pieces.push_back(linear);
      found = true;
      break;
    }
  }
  if (rest.degree() == 4) {
    if (auto pair = split_quadratic_pair(rest)) {
      pieces.push_back(pair->first);
      pieces.push_back(pair->second);
    } else {
      pieces.push_back(rest);
    }
  } else if (rest.degree() >= 1) {
    // degree 2 or 3 without rational roots is irreducible
    pieces.push_back(rest);
  }

  std::sort(pieces.begin(), pieces.end(), canonical_less);
  Factorization out;
  for (auto& piece : pieces) {
    if (!out.factors.empty() && out.factors.back().poly == piece)
      ++out.factors.back().multiplicity;
    else
      out.factors.push_back(Factor{std::move(piece), 1});
  }
  if (!(out.product() == p)) throw InvariantViolation("factor_monic_quartic: product mismatch");
  return out;
}

IntPolynomial cyclotomic(int k) {
  if (k < 1) throw std::invalid_argument("cyclotomic: order must be positive");
  static std::mutex lock;
  static std::map<int, IntPolynomial> cache;
  {
    std::lock_guard<std::mutex> guard(lock);
    if (auto it = cache.find(k); it != cache.end()) return it->second;
  }
  IntPolynomial num = IntPolynomial::monomial(Integer(1), static_cast<std::size_t>(k)) - IntPolynomial{Integer(1)};
  for (int d = 1; d < k; ++d)
    if (k % d == 0) num = num.divmod(cyclotomic(d)).first;
  std::lock_guard<std::mutex> guard(lock);
  cache.emplace(k, num);
  return num;
}

const std::vector<int>& small_cyclotomic_orders() {
  static const std::vector<int> orders{1, 2, 3, 4, 5, 6, 8, 10, 12};
  return orders;
}

std::vector<int> cyclotomic_orders(const IntPolynomial& p) {
  if (!p.is_monic()) throw std::invalid_argument("cyclotomic_orders: polynomial is not monic");
  std::vector<int> out;
  for (int k : small_cyclotomic_orders())
    if (p.divisible_by(cyclotomic(k))) out.push_back(k);
  return out;
}

}  // namespace toral
