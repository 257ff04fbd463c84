// Scalar and dense-matrix vocabulary shared by every module.
//
// All correctness-bearing arithmetic runs on arbitrary-precision integers and
// rationals. Real is an MPFR float whose precision is taken from the current
// default (see PrecisionScope); it only ever carries numeric shadows of exact
// objects.
#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace toral {

namespace mp = boost::multiprecision;

using Integer = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;
using Real = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;
using RealMatrix = Matrix<Real>;
using IntVector = Vector<Integer>;
using RatVector = Vector<Rational>;

/// Raised when an internal cross-check between two independent routes fails.
/// The CLI maps it to exit code 2.
class InvariantViolation : public std::logic_error {
 public:
  explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

/// Sets the MPFR default precision (decimal digits) for the lifetime of the
/// object and restores the previous value on exit.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits) : saved_(Real::default_precision()) {
    Real::default_precision(digits);
  }
  ~PrecisionScope() { Real::default_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

inline Rational to_rational(const Integer& z) { return Rational(z); }

inline Integer numerator_of(const Rational& q) { return Integer(mp::numerator(q)); }
inline Integer denominator_of(const Rational& q) { return Integer(mp::denominator(q)); }

inline bool is_integral(const Rational& q) { return mp::denominator(q) == 1; }

inline Integer abs_value(const Integer& z) { return z < 0 ? Integer(-z) : z; }

}  // namespace toral
