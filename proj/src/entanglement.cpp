#include "harvest/entanglement.hpp"

#include <algorithm>
#include <cmath>

#include "harvest/errors.hpp"

namespace harvest::ent {

DensityMatrix4 assemble_rho(const me::MatrixElements& m) {
  if (!(m.l_aa + m.l_bb < 1.0))
    throw RegimeError("L_AA + L_BB >= 1: coupling outside the perturbative regime");
  DensityMatrix4 rho = DensityMatrix4::Zero();
  rho(0, 0) = 1.0 - m.l_aa - m.l_bb;
  rho(0, 3) = std::conj(m.m_total.value);
  rho(3, 0) = m.m_total.value;
  rho(1, 1) = m.l_bb;
  rho(2, 2) = m.l_aa;
  rho(1, 2) = m.l_ab.value;
  rho(2, 1) = std::conj(m.l_ab.value);
  return rho;
}

double negativity_general(double l_aa, double l_bb, double m_abs) {
  double d = l_aa - l_bb;
  double e = 0.5 * (l_aa + l_bb - std::sqrt(d * d + 4.0 * m_abs * m_abs));
  return std::max(0.0, -e);
}

Split negativity_split(double l_jj, me::cplx m_plus, me::cplx m_minus) {
  Split s;
  s.n_total = std::max(0.0, std::abs(m_plus + m_minus) - l_jj);
  s.n_plus = std::max(0.0, std::abs(m_plus) - l_jj);
  s.n_minus = std::max(0.0, std::abs(m_minus) - l_jj);
  return s;
}

double estimator_I(double n_total, double n_minus) {
  return n_total > 0.0 ? n_minus / n_total : 0.0;
}

double ptrans_eigen_oracle(const DensityMatrix4& rho) {
  // Transpose the B index: (iA jB, kA lB) -> (iA lB, kA jB).
  DensityMatrix4 pt;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      int ia = r / 2, jb = r % 2, ka = c / 2, lb = c % 2;
      pt(2 * ia + lb, 2 * ka + jb) = rho(r, c);
    }
  Eigen::SelfAdjointEigenSolver<DensityMatrix4> es(pt, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

EntanglementReport report(const me::MatrixElements& m, model::CausalClass c) {
  EntanglementReport r;
  r.split = negativity_split(m.l_aa, m.m_plus.value, m.m_minus.value);
  r.estimator = estimator_I(r.split.n_total, r.split.n_minus);
  r.i_flag = r.estimator > 1.0;
  r.causal = c;
  return r;
}

}  // namespace harvest::ent
