#pragma once

#include <Eigen/Dense>

#include "harvest/matrix_elements.hpp"
#include "harvest/model.hpp"

namespace harvest::ent {

// Basis order {gg, ge, eg, ee}.
using DensityMatrix4 = Eigen::Matrix4cd;

DensityMatrix4 assemble_rho(const me::MatrixElements& m);

// max{0, -E} with E = (L_AA + L_BB - sqrt((L_AA - L_BB)^2 + 4|M|^2)) / 2.
double negativity_general(double l_aa, double l_bb, double m_abs);

struct Split {
  double n_total = 0.0;
  double n_plus = 0.0;
  double n_minus = 0.0;
};

// N from |M+ + M-| (complex sum), N+- from |M+-|.
Split negativity_split(double l_jj, me::cplx m_plus, me::cplx m_minus);

// N^- / N, or 0 when N = 0. Not clamped.
double estimator_I(double n_total, double n_minus);

// Smallest eigenvalue of the partial transpose on B.
double ptrans_eigen_oracle(const DensityMatrix4& rho);

struct EntanglementReport {
  Split split;
  double estimator = 0.0;
  bool i_flag = false;  // estimator > 1 through M+/M- interference
  model::CausalClass causal = model::CausalClass::spacelike;
};

EntanglementReport report(const me::MatrixElements& m, model::CausalClass c);

}  // namespace harvest::ent
