#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "harvest/errors.hpp"

namespace harvest::specfun {

using cplx = std::complex<double>;

double gamma(double x);

// Faddeeva function w(z) = exp(-z^2) erfc(-iz), whole complex plane.
cplx faddeeva(cplx z);

// Dawson integral F(z) = exp(-z^2) int_0^z exp(y^2) dy.
cplx dawson(cplx z);

// erfi(z) = -i erf(iz).
cplx erfi(cplx z);

// exp(-t^2/2) F((x + i t)/sqrt 2) for real x, t. Never overflows.
cplx scaled_dawson(double x, double t);

// exp(-t^2/2) Re F((x + i t)/sqrt 2): the combination entering K3 + K4.
double dawson_pair(double x, double t);

// Regularized 0F1(;b;z) for z <= 0. Picks the series or the Bessel route.
double reg_hyp0f1(double b, double z);
double reg_hyp0f1_bessel(double b, double z);

// Power series sum_k z^k / (k! Gamma(b+k)); usable in extended precision.
template <class Real>
Real reg_hyp0f1_series(Real b, Real z, Real gamma_b) {
  using std::abs;
  Real term = Real(1) / gamma_b;
  Real sum = term;
  const Real eps = std::numeric_limits<Real>::epsilon();
  for (int k = 1; k < 100000; ++k) {
    term *= z / (Real(k) * (b + Real(k - 1)));
    sum += term;
    if (abs(term) <= eps * abs(sum) && Real(k) > abs(z)) return sum;
  }
  throw AccuracyError("reg_hyp0f1 series did not converge");
}

// Kummer's 1F1(a;b;z). For z < 0 the Kummer transformation keeps the terms
// positive unless a is a non-positive integer, where the polynomial is used.
template <class Real>
Real kummer1f1(Real a, Real b, Real z) {
  using std::abs;
  using std::exp;
  using std::floor;
  const Real eps = std::numeric_limits<Real>::epsilon();
  if (b <= 0 && floor(b) == b)
    throw DomainError("kummer1f1: b is a non-positive integer");
  if (z == 0) return Real(1);

  const bool terminating = (a <= 0 && floor(a) == a);
  Real pref = Real(1);
  if (!terminating && z < 0) {
    pref = exp(z);
    a = b - a;
    z = -z;
  }

  Real term = Real(1), sum = Real(1), biggest = Real(1);
  for (int k = 0; k < 100000; ++k) {
    Real ak = a + Real(k);
    if (ak == 0) break;  // polynomial end
    term *= ak * z / ((b + Real(k)) * Real(k + 1));
    sum += term;
    if (abs(term) > biggest) biggest = abs(term);
    if (abs(term) <= eps * abs(sum) && Real(k) > abs(z)) break;
    if (k == 99999) throw AccuracyError("kummer1f1 series did not converge");
  }
  // Digits lost to cancellation relative to the working precision.
  if (biggest * eps > Real(1e-10) * abs(sum))
    throw AccuracyError("kummer1f1: cancellation beyond tolerance");
  return pref * sum;
}

// Modified Bessel function K_nu(z), principal branch, Re z > 0.
cplx bessel_k(double nu, cplx z);

}  // namespace harvest::specfun
