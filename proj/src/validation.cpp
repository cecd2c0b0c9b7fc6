#include "harvest/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <map>
#include <mutex>
#include <random>
#include <tuple>

#include <boost/math/tools/minima.hpp>

#include "harvest/entanglement.hpp"
#include "harvest/matrix_elements.hpp"
#include "harvest/wightman.hpp"

namespace harvest::validation {

namespace {

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

model::PairConfig point(int n, double t, double mass = 0.0, double lambda_ir = 0.0,
                        double omega = 7.0, double L = 7.0) {
  model::PairConfig c = model::PairConfig::reference(n, omega, L, t);
  c.field.mass_mT = mass;
  if (lambda_ir > 0.0) c.field.ir_cutoff_LambdaT = lambda_ir;
  return c;
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

std::vector<sweep::Point> column(const std::vector<sweep::SweepRow>& rows,
                                 double sweep::SweepRow::*field) {
  std::vector<sweep::Point> s;
  for (const auto& r : rows) s.push_back({r.t_ab_T, r.*field});
  return s;
}

CheckResult anticommutator_zero() {
  const auto& rows = reference_sweep(3);
  double peak = 0.0;
  for (const auto& r : rows) peak = std::max(peak, r.abs_m_plus);
  CheckResult out{"anticommutator_zero", true, ""};
  for (int sign : {+1, -1}) {
    // Grid local minimum near the light cone, then a 1D refinement.
    size_t best = 0;
    double best_v = INFINITY;
    for (size_t i = 1; i + 1 < rows.size(); ++i) {
      double a = std::abs(rows[i].t_ab_T);
      if (sign * rows[i].t_ab_T < 0 || a < 6.8 || a > 7.4) continue;
      if (rows[i].abs_m_plus <= rows[i - 1].abs_m_plus &&
          rows[i].abs_m_plus <= rows[i + 1].abs_m_plus && rows[i].abs_m_plus < best_v) {
        best = i;
        best_v = rows[i].abs_m_plus;
      }
    }
    if (best == 0) {
      out.pass = false;
      out.detail += fmt("sign %+d: no grid local minimum of |M+| near the light cone; ", sign);
      continue;
    }
    auto f = [](double t) { return std::abs(me::m_plus(point(3, t)).value); };
    auto [tmin, vmin] = boost::math::tools::brent_find_minima(
        f, rows[best - 1].t_ab_T, rows[best + 1].t_ab_T, 40);
    bool ok = std::abs(tmin) >= 7.02 && std::abs(tmin) <= 7.12 && vmin < 1e-3 * peak;
    out.pass = out.pass && ok;
    out.detail += fmt("t_min=%.5f |M+|/max=%.3e (need |t| in [7.02,7.12], < 1e-3); ", tmin,
                      vmin / peak);
  }
  return out;
}

CheckResult estimator_light_cone() {
  const auto& rows = reference_sweep(3);
  double imax = 0.0, i0 = NAN;
  for (const auto& r : rows) {
    double a = std::abs(r.t_ab_T);
    if (a >= 6.5 - 1e-9 && a <= 7.5 + 1e-9) imax = std::max(imax, r.estimator_i);
    if (std::abs(r.t_ab_T) < 1e-9) i0 = r.estimator_i;
  }
  bool ok = imax > 0.95 && i0 < 0.05;
  return {"estimator_light_cone", ok,
          fmt("max I near light cone=%.6f (> 0.95), I(0)=%.3e (< 0.05)", imax, i0)};
}

CheckResult commutator_symmetry() {
  CheckResult out{"commutator_symmetry", true, ""};
  for (double d : {0.5, 1.0}) {
    double a = std::abs(me::m_minus(point(3, 7.0 + d)).value);
    double b = std::abs(me::m_minus(point(3, 7.0 - d)).value);
    double r = rel_diff(a, b);
    out.pass = out.pass && r < 1e-4;
    out.detail += fmt("delta=%.1f rel=%.3e; ", d, r);
  }
  out.detail += "(bound 1e-4)";
  return out;
}

CheckResult timelike_dominance_2d() {
  CheckResult out{"timelike_dominance_2d", true, ""};
  for (double t : {9.0, 10.0}) {
    me::MatrixElements m = me::compute_all(point(2, t));
    double ratio = std::abs(m.m_minus.value) / std::abs(m.m_total.value);
    out.pass = out.pass && ratio > 0.95;
    out.detail += fmt("t=%.0f |M-|/|M|=%.6f; ", t, ratio);
  }
  out.detail += "(bound > 0.95)";
  return out;
}

CheckResult ir_plateau_1d() {
  const auto& a = reference_sweep(1, 0.0, 0.02);
  double sum = 0.0, sum2 = 0.0;
  int cnt = 0;
  for (const auto& r : a)
    if (r.t_ab_T >= 10.0 - 1e-9 && r.t_ab_T <= 14.0 + 1e-9) {
      sum += r.abs_m_minus;
      sum2 += r.abs_m_minus * r.abs_m_minus;
      ++cnt;
    }
  double mean = sum / cnt;
  double rsd = std::sqrt(std::max(0.0, sum2 / cnt - mean * mean)) / mean;
  const auto& b = reference_sweep(1, 0.0, 0.01);
  double worst = INFINITY, n_max = 0.0;
  for (const auto& r : b) {
    worst = std::min(worst, r.l_jj - r.abs_m_minus);
    n_max = std::max(n_max, r.n_total);
  }
  bool ok = rsd < 0.05 && worst > 0.0;
  return {"ir_plateau_1d", ok,
          fmt("rsd |M-| over [10,14] at Lambda=0.02: %.3e (< 0.05); min(L_jj-|M-|) at "
              "Lambda=0.01: %.3e (> 0); max N there: %.3e",
              rsd, worst, n_max)};
}

CheckResult peak_counting() {
  struct Expect {
    int n;
    bool minus;
    int peaks;
  };
  const Expect table[] = {{5, true, 2}, {5, false, 3}, {4, true, 2},
                          {4, false, 2}, {3, true, 1}};
  CheckResult out{"peak_counting", true, ""};
  for (const auto& e : table) {
    const auto& rows = reference_sweep(e.n);
    auto s = column(rows, e.minus ? &sweep::SweepRow::abs_m_minus : &sweep::SweepRow::abs_m_plus);
    int got = sweep::count_peaks(s, 0.05, 5.0, 9.0);
    out.pass = out.pass && got == e.peaks;
    out.detail += fmt("n=%d |M%s| %d peaks (expect %d); ", e.n, e.minus ? "-" : "+", got, e.peaks);
  }
  return out;
}

CheckResult massive_alternation() {
  const auto& rows = reference_sweep(3, 1.0);
  int changes = 0;
  double prev = 0.0;
  for (const auto& r : rows) {
    if (r.t_ab_T < 7.0 - 1e-9 || r.t_ab_T > 14.0 + 1e-9) continue;
    double d = r.abs_m_plus - r.abs_m_minus;
    if (prev != 0.0 && d != 0.0 && (d > 0) != (prev > 0)) ++changes;
    if (d != 0.0) prev = d;
  }
  return {"massive_alternation", changes >= 2,
          fmt("sign changes of |M+|-|M-| over [7,14]: %d (need >= 2)", changes)};
}

CheckResult oracle_equivalences() {
  CheckResult out{"oracle_equivalences", true, ""};
  me::EvalOptions tight;
  tight.tol = {1e-12, 0.0, 1e-15};

  double worst_l = 0.0;
  for (int n = 2; n <= 6; ++n)
    for (double om : {0.0, 3.0, 7.0}) {
      model::FieldSpec f;
      f.n = n;
      worst_l = std::max(worst_l, rel_diff(me::ljj_closed_massless(n, om),
                                           me::ljj_numeric(f, om, tight).value));
    }
  bool ok1 = worst_l < 1e-8;

  double worst_m = 0.0;
  for (double t : {0.0, 7.0, 10.0}) {
    model::PairConfig c = point(3, t);
    me::PositionSpaceM pos = me::m_positionspace_oracle(c);
    me::ComplexValue p = me::m_plus(c), q = me::m_minus(c);
    double scale = std::abs(p.value) + std::abs(q.value);
    worst_m = std::max({worst_m, std::abs(p.value - pos.m_plus.value) / scale,
                        std::abs(q.value - pos.m_minus.value) / scale});
  }
  bool ok2 = worst_m < 1e-4;

  double worst_c = 0.0;
  model::FieldSpec f2;
  f2.n = 2;
  for (double dt : {9.0, 10.0, 12.0, -9.0}) {
    wightman::SpacetimeInterval iv{dt, 7.0};
    wightman::cplx closed = wightman::commutator_closed(2, iv).value_at(dt);
    wightman::cplx num = wightman::commutator_numeric(f2, iv, 0.01).value;
    worst_c = std::max(worst_c, std::abs(closed - num) / std::abs(closed));
  }
  bool ok3 = worst_c < 1e-4;

  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> uk(0.0, 8.0), ut(-8.0, 8.0);
  double worst_k = 0.0;
  for (int i = 0; i < 100; ++i) {
    double k = uk(rng), t = ut(rng);
    model::PairConfig c = point(3, t);
    wightman::cplx k3 = me::kernel_K(3, k, c), k4 = me::kernel_K(4, k, c);
    wightman::cplx j = me::kernel_K34_jform(k, c);
    worst_k = std::max(worst_k, std::abs(k3 + k4 - j) / (std::abs(k3) + std::abs(k4)));
  }
  bool ok4 = worst_k < 1e-9;

  out.pass = ok1 && ok2 && ok3 && ok4;
  out.detail = fmt(
      "(i) L_jj closed vs numeric %.2e (< 1e-8); (ii) M+- momentum vs position %.2e (< 1e-4); "
      "(iii) n=2 commutator numeric vs closed %.2e (< 1e-4); (iv) K3+K4 vs J form %.2e (< 1e-9)",
      worst_l, worst_m, worst_c, worst_k);
  return out;
}

CheckResult invariant_suite() {
  CheckResult out{"invariant_suite", true, ""};
  me::EvalOptions opts;

  // Split consistency on the validation grid.
  int split_fail = 0;
  double split_worst = 0.0;
  for (int n = 1; n <= 5; ++n)
    for (double m : {0.0, 0.2, 1.0})
      for (double t : {0.0, 5.0, 7.0, 10.0}) {
        model::PairConfig c = point(n, t, m, n == 1 ? 0.02 : 0.0);
        SplitCheck s = split_consistency(c, opts);
        if (!s.pass) ++split_fail;
        split_worst = std::max(split_worst, s.mismatch / s.allowed);
      }
  out.detail += fmt("split: %d failures, worst mismatch/allowed %.2e; ", split_fail, split_worst);

  // lambda~^2 scaling.
  double scale_worst = 0.0;
  for (double t : {0.0, 7.0}) {
    model::PairConfig a = point(3, t), b = a;
    b.coupling_lambda_tilde = 2.0;
    me::MatrixElements ma = me::compute_all(a), mb = me::compute_all(b);
    scale_worst = std::max({scale_worst, std::abs(mb.l_aa / ma.l_aa - 4.0),
                            std::abs(std::abs(mb.m_plus.value) / std::abs(ma.m_plus.value) - 4.0),
                            std::abs(std::abs(mb.m_minus.value) / std::abs(ma.m_minus.value) - 4.0),
                            std::abs(std::abs(mb.l_ab.value) / std::abs(ma.l_ab.value) - 4.0)});
  }
  bool scale_ok = scale_worst < 1e-13;
  out.detail += fmt("scaling dev %.1e; ", scale_worst);

  // Strong Huygens truth table.
  bool huygens_ok = true;
  std::string hdetail;
  for (int n = 1; n <= 7; ++n) {
    auto ext = wightman::huygens_check(n, wightman::Region::exterior, 1e-6);
    huygens_ok = huygens_ok && ext.silent;
    if (n % 2 == 1 || n <= 2) {
      auto in = wightman::huygens_check(n, wightman::Region::interior, 1e-6);
      bool expect = n >= 3;
      huygens_ok = huygens_ok && in.silent == expect;
      hdetail += fmt("n=%d in %.1e ex %.1e, ", n, in.leakage / in.peak, ext.leakage / ext.peak);
    } else {
      hdetail += fmt("n=%d ex %.1e, ", n, ext.leakage / ext.peak);
    }
  }
  out.detail += "huygens " + hdetail;

  // IR safety of M- and C-.
  double ir_worst = 0.0;
  for (double t : {0.0, 5.0, 10.0}) {
    double a = std::abs(me::m_minus(point(1, t, 0.0, 0.02)).value);
    double b = std::abs(me::m_minus(point(1, t, 0.0, 0.001)).value);
    ir_worst = std::max(ir_worst, rel_diff(a, b));
    model::FieldSpec fa, fb;
    fa.n = fb.n = 1;
    fa.ir_cutoff_LambdaT = 0.02;
    fb.ir_cutoff_LambdaT = 0.001;
    wightman::cplx ca = wightman::commutator_numeric(fa, {t + 3.0, 2.0}, 0.3).value;
    wightman::cplx cb = wightman::commutator_numeric(fb, {t + 3.0, 2.0}, 0.3).value;
    ir_worst = std::max(ir_worst, std::abs(ca - cb) / std::abs(ca));
  }
  bool ir_ok = ir_worst < 1e-6;
  out.detail += fmt("IR dev %.1e; ", ir_worst);

  // Negativity against the partial-transpose eigenvalues, with the coupling
  // chosen so that L_jj = 0.01.
  double neg_worst = 0.0;
  for (int n : {2, 3, 4})
    for (double t : {0.0, 5.0, 7.0, 10.0}) {
      model::PairConfig c = point(n, t);
      double l1 = me::ljj(c).value;
      c.coupling_lambda_tilde = std::sqrt(0.01 / l1);
      me::MatrixElements m = me::compute_all(c);
      double ng = ent::negativity_general(m.l_aa, m.l_bb, std::abs(m.m_total.value));
      double no = std::max(0.0, -ent::ptrans_eigen_oracle(ent::assemble_rho(m)));
      double bound = (m.l_aa + m.l_bb) * (m.l_aa + m.l_bb);
      neg_worst = std::max(neg_worst, std::abs(ng - no) / bound);
    }
  bool neg_ok = neg_worst <= 1.0;
  out.detail += fmt("negativity residual/(L_AA+L_BB)^2 %.2e", neg_worst);

  out.pass = split_fail == 0 && scale_ok && huygens_ok && ir_ok && neg_ok;
  return out;
}

CheckResult truncated_switching() {
  CheckResult out{"truncated_switching", true, ""};
  double worst = 0.0;
  for (double t : {0.0, 7.0}) {
    model::PairConfig full = point(3, t, 0.0, 0.0, 4.0);
    model::PairConfig tr = full;
    tr.switching = model::SwitchingSpec::truncated(3.0);
    me::ComplexValue fp = me::m_plus(full), fm = me::m_minus(full);
    me::ComplexValue tp = me::m_plus(tr), tm = me::m_minus(tr);
    double scale = std::abs(fp.value) + std::abs(fm.value);
    worst = std::max({worst, std::abs(std::abs(fp.value) - std::abs(tp.value)) / scale,
                      std::abs(std::abs(fm.value) - std::abs(tm.value)) / scale});
  }
  bool close_ok = worst < 0.05;

  // Exact zero wherever the compact supports are strictly spacelike.
  int spacelike = 0, nonzero = 0;
  for (int i = -140; i <= 140; ++i) {
    model::PairConfig c = point(3, 0.1 * i, 0.0, 0.0, 4.0);
    c.switching = model::SwitchingSpec::truncated(3.0);
    if (!model::strictly_spacelike_compact(c)) continue;
    ++spacelike;
    if (me::m_minus(c).value != wightman::cplx(0.0)) ++nonzero;
  }
  double pos_worst = 0.0;
  for (double t : {0.0, 0.5}) {
    model::PairConfig c = point(3, t, 0.0, 0.0, 4.0);
    c.switching = model::SwitchingSpec::truncated(3.0);
    me::PositionSpaceM pos = me::m_positionspace_oracle(c);
    pos_worst = std::max(pos_worst, std::abs(pos.m_minus.value) / std::abs(pos.m_plus.value));
  }
  bool zero_ok = spacelike > 0 && nonzero == 0 && pos_worst < 1e-8;
  out.pass = close_ok && zero_ok;
  out.detail = fmt(
      "OmegaT=4, L=7T: max |M+-| full vs truncated %.2e (< 0.05); strictly spacelike points %d, "
      "nonzero |M-| %d; position-space |M-|/|M+| %.1e (< 1e-8)",
      worst, spacelike, nonzero, pos_worst);
  return out;
}

}  // namespace

const std::vector<sweep::SweepRow>& reference_sweep(int n, double mass, double lambda_ir) {
  static std::mutex mu;
  static std::map<std::tuple<int, double, double>, std::vector<sweep::SweepRow>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(n, mass, lambda_ir);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  sweep::SweepConfig cfg;
  cfg.pair = point(n, 0.0, mass, lambda_ir);
  std::vector<sweep::SweepRow> rows = sweep::run_sweep(cfg);
  for (const auto& r : rows)
    if (r.error) throw AccuracyError("reference sweep point failed: " + r.error_message);
  return cache.emplace(key, std::move(rows)).first->second;
}

SplitCheck split_consistency(const model::PairConfig& cfg, const me::EvalOptions& opts) {
  me::ComplexValue p = me::m_plus(cfg, opts), q = me::m_minus(cfg, opts);
  me::ComplexValue t = me::m_total(cfg, opts);
  SplitCheck s;
  s.mismatch = std::abs(t.value - (p.value + q.value));
  s.allowed = t.error + p.error + q.error;
  s.pass = s.mismatch <= s.allowed;
  return s;
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list{
      {"anticommutator_zero", "(3+1) anti-commutator zero near the light cone", anticommutator_zero},
      {"estimator_light_cone", "(3+1) estimator near the light cone", estimator_light_cone},
      {"commutator_symmetry", "(3+1) |M-| symmetric about the light cone", commutator_symmetry},
      {"timelike_dominance_2d", "(2+1) timelike communication dominance", timelike_dominance_2d},
      {"ir_plateau_1d", "(1+1) |M-| plateau and L_jj > |M-|", ir_plateau_1d},
      {"peak_counting", "peak counts around the light cone", peak_counting},
      {"massive_alternation", "massive M+/M- alternation", massive_alternation},
      {"oracle_equivalences", "oracle equivalences", oracle_equivalences},
      {"invariant_suite", "invariant suite", invariant_suite},
      {"truncated_switching", "truncated switching", truncated_switching},
  };
  return list;
}

const Criterion* find_criterion(const std::string& id) {
  for (const auto& c : criteria())
    if (c.id == id) return &c;
  return nullptr;
}

}  // namespace harvest::validation
