#include "toral/numeric.hpp"

#include <algorithm>
#include <ios>

namespace toral {

Real abs(const Complex& z) { return mp::hypot(z.re, z.im); }

Complex sqrt(const Complex& z) {
  if (z.im == 0) {
    if (z.re >= 0) return {mp::sqrt(z.re), Real(0)};
    return {Real(0), mp::sqrt(Real(-z.re))};
  }
  const Real m = abs(z);
  const Real re = mp::sqrt(Real((m + z.re) / 2));
  Real im = mp::sqrt(Real((m - z.re) / 2));
  if (z.im < 0) im = -im;
  return {re, im};
}

namespace {

Complex evaluate(const IntPolynomial& p, const Complex& z) {
  Complex acc;
  const auto& c = p.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + Complex(Real(*it));
  return acc;
}

IntPolynomial derivative(const IntPolynomial& p) {
  std::vector<Integer> c;
  for (std::size_t i = 1; i < p.coefficients().size(); ++i) c.push_back(Integer(p.coefficients()[i] * static_cast<long>(i)));
  return IntPolynomial(std::move(c));
}

}  // namespace

std::vector<Complex> squarefree_roots(const IntPolynomial& p, unsigned digits) {
  const int n = p.degree();
  if (n < 1) throw std::invalid_argument("squarefree_roots: constant polynomial");
  if (n == 1) return {Complex(Real(Real(-p.coefficient(0)) / Real(p.coefficient(1))))};
  if (n == 2) {
    const Real a(p.coefficient(2)), b(p.coefficient(1)), c(p.coefficient(0));
    const Complex s = sqrt(Complex(Real(b * b - 4 * a * c)));
    const Complex two_a(Real(2 * a));
    return {(Complex(-b) + s) / two_a, (Complex(-b) - s) / two_a};
  }

  const IntPolynomial dp = derivative(p);
  Real bound(1);
  const Real lead = mp::abs(Real(p.leading()));
  for (int i = 0; i < n; ++i) {
    const Real r = 1 + mp::abs(Real(p.coefficient(static_cast<std::size_t>(i)))) / lead;
    if (r > bound) bound = r;
  }
  const Real radius = mp::sqrt(bound);
  const Real two_pi = 2 * mp::acos(Real(-1));
  std::vector<Complex> z;
  for (int k = 0; k < n; ++k) {
    const Real angle = two_pi * k / n + Real(0.4);
    z.emplace_back(radius * mp::cos(angle), radius * mp::sin(angle));
  }
  // Steps cannot shrink much below the working precision, so stop a few digits
  // short of it and let one more cubically convergent sweep finish the job.
  const Real tol = mp::pow(Real(10), 5 - static_cast<int>(digits));
  int extra = 1;
  for (int iter = 0; iter < 2000; ++iter) {
    Real worst(0);
    for (int k = 0; k < n; ++k) {
      const Complex w = evaluate(p, z[k]) / evaluate(dp, z[k]);
      Complex repulsion;
      for (int j = 0; j < n; ++j)
        if (j != k) repulsion = repulsion + Complex(Real(1)) / (z[k] - z[j]);
      const Complex step = w / (Complex(Real(1)) - w * repulsion);
      z[k] = z[k] - step;
      if (const Real m = abs(step); m > worst) worst = m;
    }
    if (worst < tol && extra-- == 0) break;
  }
  // Real coefficients: imaginary residue below the root separation scale is noise.
  const Real noise = mp::pow(Real(10), -static_cast<int>(digits / 2));
  for (Complex& r : z)
    if (mp::abs(r.im) < noise * (1 + abs(r))) {
      r.im = 0;
      for (int k = 0; k < 3; ++k) {
        const Complex step = evaluate(p, r) / evaluate(dp, r);
        r.re -= step.re;
      }
    }
  return z;
}

std::string fixed_string(const Real& x, unsigned digits) {
  return x.str(static_cast<std::streamsize>(digits), std::ios_base::fixed);
}

}  // namespace toral
