// High-precision numeric shadows of exact objects.
#pragma once

#include "toral/polynomial.hpp"

#include <string>
#include <vector>

namespace toral {

struct Complex {
  Real re;
  Real im;

  Complex() : re(0), im(0) {}
  Complex(Real r, Real i = Real(0)) : re(std::move(r)), im(std::move(i)) {}

  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator/(const Complex& a, const Complex& b) {
    const Real den = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
  }
  Complex operator-() const { return {-re, -im}; }
};

Real abs(const Complex& z);
Complex sqrt(const Complex& z);  // principal branch

/// Roots of a squarefree integer polynomial of degree 1..4 (or more) to about
/// `digits` significant digits: closed forms for degree <= 2, Aberth-Ehrlich
/// iteration otherwise. The caller owns the MPFR precision scope.
std::vector<Complex> squarefree_roots(const IntPolynomial& p, unsigned digits);

/// Decimal rendering with `digits` digits after the point.
std::string fixed_string(const Real& x, unsigned digits);

}  // namespace toral
