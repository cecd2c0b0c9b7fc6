#pragma once

#include <complex>

#include "harvest/model.hpp"
#include "harvest/quadrature.hpp"

namespace harvest::me {

using cplx = std::complex<double>;
using model::FieldSpec;
using model::PairConfig;
using model::SmearingSpec;
using model::SwitchingSpec;

struct RealValue {
  double value = 0.0;
  double error = 0.0;
};

struct ComplexValue {
  cplx value{};
  double error = 0.0;
};

struct EvalOptions {
  // rel: relative accuracy; l1: absolute accuracy measured against the
  // integrand's L1 norm, which matters when M^- cancels to nearly zero.
  quad::Tolerance tol{1e-9, 0.0, 1e-13};
  // Sign applied to K3 in m_total only. Used by mutation tests.
  double k3_sign = 1.0;
  // Radial cutoff for the compact switching, whose transform decays only
  // algebraically (L_jj is UV divergent for sharp edges when n >= 3).
  double truncated_k_max = 200.0;
  // Evaluate m_total from the four kernels instead of M^+ + M^-.
  bool direct_total = false;
};

struct MatrixElements {
  double l_aa = 0.0, l_bb = 0.0, l_error = 0.0;
  ComplexValue l_ab, m_total, m_plus, m_minus;
};

// L_jj / lambda^2 in closed form (massless, Gaussian switching, pointlike).
double ljj_closed_massless(int n, double omega);

// L_jj / lambda^2 by radial quadrature (Gaussian switching, pointlike).
RealValue ljj_numeric(const FieldSpec& field, double omega, const EvalOptions& opts = {});

// L_jj for any configuration, lambda~^2 included.
RealValue ljj(const PairConfig& cfg, const EvalOptions& opts = {});

ComplexValue lab_cross(const PairConfig& cfg, const EvalOptions& opts = {});

// Radial kernels K_1..K_4 (Gaussian switching), without the measure
// k^(n-1)/omega and without lambda~^2.
cplx kernel_K(int j, double k, const PairConfig& cfg, double k3_sign = 1.0);

// K_3 + K_4 through the pair of J(a, b) = -i sqrt(pi) exp(-a^2 - b^2/4)
// erfi((a + b/2)/sqrt 2) terms.
cplx kernel_K34_jform(double k, const PairConfig& cfg);

ComplexValue m_plus(const PairConfig& cfg, const EvalOptions& opts = {});
ComplexValue m_minus(const PairConfig& cfg, const EvalOptions& opts = {});
ComplexValue m_total(const PairConfig& cfg, const EvalOptions& opts = {});

struct PositionSpaceM {
  ComplexValue m_total, m_plus, m_minus;
};

// Double-time integral of the regulated 3+1 Wightman function, eps -> 0.
PositionSpaceM m_positionspace_oracle(const PairConfig& cfg,
                                      const std::vector<double>& eps_ladder =
                                          quad::default_eps_ladder());

// |F~(k)|^2 of the L1-normalized spatial profile.
double smearing_factor(double k, const SmearingSpec& s);

// Fourier transform of the switching profile centered at t = 0.
double switching_transform(double w, const SwitchingSpec& s);

// h(s) = int dt chi_A(t) chi_B(t - s) exp(i Omega (2t - s)).
cplx switching_overlap(double s, const PairConfig& cfg);

MatrixElements compute_all(const PairConfig& cfg, const EvalOptions& opts = {});

}  // namespace harvest::me
