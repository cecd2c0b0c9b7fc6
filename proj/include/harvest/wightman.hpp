#pragma once

#include <complex>
#include <vector>

#include "harvest/model.hpp"
#include "harvest/quadrature.hpp"

namespace harvest::wightman {

using cplx = std::complex<double>;
using model::FieldSpec;

struct SpacetimeInterval {
  double dt_T = 0.0;
  double dx_T = 0.0;  // |dx| / T, >= 0
};

// Vacuum Wightman function W(x, x') with x - x' = (dt, dx), regulated by
// dt -> dt - i eps.
cplx wightman_closed(const FieldSpec& field, SpacetimeInterval iv, double eps_T);

// One term  coefficient * delta^(order)(dt + branch * dx).
struct NullDeltaTerm {
  int order = 0;
  int branch = +1;      // +1: delta(dt + dx), -1: delta(dt - dx)
  double a = 0.0;       // dimensionless coefficient a_j
  cplx coefficient{};   // i a_j / dx^(n-2-j), sign of the branch included
};

struct CommutatorDescriptor {
  enum class Kind { step, inverse_root, null_deltas };
  Kind kind = Kind::step;
  int n = 1;
  double dx_T = 0.0;
  std::vector<NullDeltaTerm> terms;  // null_deltas only

  // Pointwise value; refused for the distributional odd-n case.
  cplx value_at(double dt_T) const;
  int highest_order() const;
};

// Massless commutator C^-(x, x') = [phi(x), phi(x')].
CommutatorDescriptor commutator_closed(int n, SpacetimeInterval iv);

// a_j for odd n >= 3, j = 0 .. (n-3)/2, from the dimensional recursion
// C_{n+2} = -(1/(2 pi r)) d/dr C_n.
std::vector<double> odd_dimension_coefficients(int n);

struct GaussianProfile {
  double center_T = 0.0;
  double width_T = 1.0;  // profile exp(-(t - c)^2 / w^2)
};

struct TestFunctionPair {
  GaussianProfile first;   // at spatial point x
  GaussianProfile second;  // at x', |x - x'| = dx

  void validate() const;
  double area() const;        // product of the two profile integrals
  double sigma() const;       // width of the difference density
  double offset() const;      // center of the difference density
  // rho(s) = int f1(t) f2(t - s) dt and its derivatives.
  double density(double s, int derivative = 0) const;
};

// int int f1(t) f2(t') C^-(t - t', dx) dt dt', massless.
cplx smeared_commutator(int n, const TestFunctionPair& f, double dx_T);

// C^- convolved in dt with a unit-area Gaussian exp(-s^2/w^2)/(sqrt(pi) w),
// from the Fourier sine representation. Massless or massive.
quad::Result commutator_numeric(const FieldSpec& field, SpacetimeInterval iv,
                                double smearing_width_T,
                                quad::Tolerance tol = {1e-10, 0, 1e-12});

// Same for the anti-commutator C^+ = W(x,x') + W(x',x). Needs the IR cutoff
// for n = 1 massless.
quad::Result anticommutator_numeric(const FieldSpec& field, SpacetimeInterval iv,
                                    double smearing_width_T,
                                    quad::Tolerance tol = {1e-10, 0, 1e-12});

// int int f1 f2 W_eps(t - t', dx), extrapolated eps -> 0 (n >= 2 massless or
// massive; n = 3 massless is the intended use).
quad::Result smeared_wightman(const FieldSpec& field, const TestFunctionPair& f, double dx_T,
                              const std::vector<double>& eps_ladder = quad::default_eps_ladder());

enum class Region { interior, exterior };

struct HuygensReport {
  bool silent = false;
  double leakage = 0.0;  // largest |smeared C^-| on the region grid
  double peak = 0.0;     // largest |smeared C^-| across the null line
};

HuygensReport huygens_check(int n, Region region, double tol);

}  // namespace harvest::wightman
