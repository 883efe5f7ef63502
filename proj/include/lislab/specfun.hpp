#pragma once

// Airy and Bessel functions of the first kind.
//
// All functions are templated on the scalar type. double and long double use
// Boost.Math directly; boost::multiprecision::mpfr_float is accepted for the
// extended-precision seeding path of the Painleve solver.

#include <cmath>
#include <string>

#include <boost/math/special_functions/airy.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>

#include "lislab/errors.hpp"

namespace lislab::specfun {

struct Accuracy {
  double abs_tol = 1e-13;
  double rel_tol = 1e-13;

  void validate() const {
    if (!(abs_tol > 0) || !(rel_tol > 0))
      throw ArgumentError("Accuracy: tolerances must be positive");
  }
  // True when |a - b| <= max(abs_tol, rel_tol * |b|).
  bool agrees(double a, double b) const {
    return std::abs(a - b) <= std::max(abs_tol, rel_tol * std::abs(b));
  }
};

namespace detail {
template <class T>
bool finite(const T& x) {
  using std::isfinite;
  using boost::math::isfinite;
  return isfinite(x);
}
template <class T>
void require_finite(const T& x, const char* what) {
  if (!finite(x)) throw DomainError(std::string(what) + ": argument is not finite");
}
}  // namespace detail

template <class Real>
Real airy_ai(const Real& x) {
  detail::require_finite(x, "airy_ai");
  return boost::math::airy_ai(x);
}

template <class Real>
Real airy_ai_prime(const Real& x) {
  detail::require_finite(x, "airy_ai_prime");
  return boost::math::airy_ai_prime(x);
}

// J_nu(x) for real order nu >= 0 and x >= 0.
template <class Real>
Real bessel_j(const Real& nu, const Real& x) {
  detail::require_finite(x, "bessel_j");
  detail::require_finite(nu, "bessel_j");
  if (nu < 0) throw DomainError("bessel_j: order must be >= 0");
  if (x < 0) throw DomainError("bessel_j: argument must be >= 0");
  if (x == 0) return nu == 0 ? Real(1) : Real(0);
  return boost::math::cyl_bessel_j(nu, x);
}

// d/dx J_nu(x).
template <class Real>
Real bessel_j_prime(const Real& nu, const Real& x) {
  detail::require_finite(x, "bessel_j_prime");
  detail::require_finite(nu, "bessel_j_prime");
  if (nu < 0) throw DomainError("bessel_j_prime: order must be >= 0");
  if (x < 0) throw DomainError("bessel_j_prime: argument must be >= 0");
  if (x == 0) {
    if (nu == 1) return Real(0.5);
    if (nu == 0 || nu > 1) return Real(0);
    throw DomainError("bessel_j_prime: derivative unbounded at x = 0 for 0 < nu < 1");
  }
  return boost::math::cyl_bessel_j_prime(nu, x);
}

struct AiryPair {
  double ai;
  double aip;
};

AiryPair airy_pair(double x);

// Smallest x0 > 0 with |Ai(x)| < eps for all x >= x0.
double airy_decay_point(double eps);

// Largest u <= nu with J_nu(u) <= eps (0 when J_nu(nu) <= eps fails at u = 0).
double bessel_small_argument_cut(double nu, double eps);

}  // namespace lislab::specfun
