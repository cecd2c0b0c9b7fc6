#include "harvest/matrix_elements.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "harvest/errors.hpp"
#include "harvest/specfun.hpp"
#include "harvest/wightman.hpp"

namespace harvest::me {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrtPi = 1.7724538509055160273;
constexpr cplx kI{0.0, 1.0};

double radial_prefactor(int n) { return std::pow(2.0, -n) * std::pow(kPi, -0.5 * n); }

double omega_k(double k, double m) { return m == 0.0 ? k : std::sqrt(k * k + m * m); }

double measure(int n, double k, double m) { return std::pow(k, n - 1) / omega_k(k, m); }

double angular(int n, double k, double L) { return specfun::reg_hyp0f1(0.5 * n, -0.25 * k * k * L * L); }

// Start of the algebraic tail: beyond it exp(-omega^2/2) terms are below
// double precision relative to the Dawson part.
double tail_start(double t) { return std::sqrt(t * t + 80.0) + 2.0; }

void check_supported(const PairConfig& cfg) {
  cfg.validate();
  if (cfg.switching.is_truncated() && (cfg.field.mass_mT > 0.0 || cfg.field.n > 3))
    throw ConfigError("truncated switching is supported for massless fields with n <= 3");
}

ComplexValue scaled(const quad::Result& r, cplx factor) {
  return {r.value * factor, r.abs_error * std::abs(factor)};
}

std::vector<double> even_breaks(double a, double b, double step) {
  std::vector<double> pts{a};
  for (double x = a + step; x < b; x += step) pts.push_back(x);
  pts.push_back(b);
  return pts;
}

// exp(C) erfc(z), computed without forming erfc(z) for large |z|.
cplx scaled_erfc(cplx C, cplx z) {
  if (z.real() >= 0.0) return std::exp(C - z * z) * specfun::faddeeva(kI * z);
  return 2.0 * std::exp(C) - std::exp(C - z * z) * specfun::faddeeva(-kI * z);
}

}  // namespace

double smearing_factor(double k, const SmearingSpec& s) {
  if (s.kind == SmearingSpec::Kind::pointlike) return 1.0;
  return std::exp(-0.5 * k * k * s.radius_T * s.radius_T);
}

double switching_transform(double w, const SwitchingSpec& s) {
  if (!s.is_truncated()) return kSqrtPi * std::exp(-0.25 * w * w);
  const double a = s.half_width_T;
  cplx edge = std::exp(cplx(-a * a, -a * w)) * specfun::faddeeva(cplx(-0.5 * w, a));
  return kSqrtPi * (std::exp(-0.25 * w * w) - edge.real());
}

cplx switching_overlap(double s, const PairConfig& cfg) {
  // chi_A(t) chi_B(t - s) e^{2i Omega t} = exp(C - 2 (t - mu)^2) on the
  // common support, with a complex centre mu; the Gaussian integral is done
  // in closed form.
  const double a = cfg.detector_a.center_tT, b = s + cfg.detector_b.center_tT;
  const double omega = cfg.omega();
  const cplx mu(0.5 * (a + b), 0.5 * omega);
  const cplx C = 2.0 * mu * mu - a * a - b * b;
  const cplx phase = std::exp(cplx(0.0, -omega * s));
  if (!cfg.switching.is_truncated()) return phase * std::sqrt(0.5 * kPi) * std::exp(C);
  const double w = cfg.switching.half_width_T;
  const double lo = std::max(a, b) - w, hi = std::min(a, b) + w;
  if (!(hi > lo)) return 0.0;
  const double r2 = std::numbers::sqrt2;
  cplx diff = scaled_erfc(C, r2 * (lo - mu)) - scaled_erfc(C, r2 * (hi - mu));
  return phase * (kSqrtPi / (2.0 * r2)) * diff;
}

double ljj_closed_massless(int n, double omega) {
  using mp = boost::multiprecision::cpp_bin_float_50;
  if (n < 2)
    throw DomainError("ljj_closed_massless: n = 1 is IR divergent; use ljj_numeric with a cutoff");
  const mp N = n, O = omega;
  const mp z = -O * O / 2;
  const mp pi = boost::math::constants::pi<mp>();
  mp pre = pow(pi, (2 - N) / 2) / (pow(mp(2), (N + 3) / 2) * boost::math::tgamma(N / 2));
  mp t1 = boost::math::tgamma((N - 1) / 2) * specfun::kummer1f1<mp>((2 - N) / 2, mp(0.5), z);
  mp t2 = sqrt(mp(2)) * O * boost::math::tgamma(N / 2) *
          specfun::kummer1f1<mp>((3 - N) / 2, mp(1.5), z);
  return static_cast<double>(pre * (t1 - t2));
}

RealValue ljj_numeric(const FieldSpec& field, double omega, const EvalOptions& opts) {
  field.validate();
  const int n = field.n;
  const double m = field.mass_mT;
  quad::Integrand f = [=](double k) -> cplx {
    double w = omega_k(k, m);
    return measure(n, k, m) * kPi * std::exp(-0.5 * (omega + w) * (omega + w));
  };
  quad::Result r = quad::integrate_semiinfinite_damped(f, 1.0, opts.tol, field.k_lower());
  double pre = radial_prefactor(n) / std::tgamma(0.5 * n);
  return {r.value.real() * pre, r.abs_error * pre};
}

RealValue ljj(const PairConfig& cfg, const EvalOptions& opts) {
  check_supported(cfg);
  const int n = cfg.field.n;
  const double m = cfg.field.mass_mT, omega = cfg.omega();
  const auto sw = cfg.switching;
  const auto sm = cfg.smearing;
  quad::Integrand f = [=](double k) -> cplx {
    double chi = switching_transform(omega + omega_k(k, m), sw);
    return measure(n, k, m) * chi * chi * smearing_factor(k, sm);
  };
  const double lower = cfg.field.k_lower();
  quad::Result r =
      sw.is_truncated()
          ? quad::integrate_adaptive_breaks(f, even_breaks(lower, opts.truncated_k_max, 2.0), opts.tol)
          : quad::integrate_semiinfinite_damped(f, 1.0, opts.tol, lower);
  const double lam2 = cfg.coupling_lambda_tilde * cfg.coupling_lambda_tilde;
  double pre = lam2 * radial_prefactor(n) / std::tgamma(0.5 * n);
  return {r.value.real() * pre, r.abs_error * pre};
}

ComplexValue lab_cross(const PairConfig& cfg, const EvalOptions& opts) {
  check_supported(cfg);
  const int n = cfg.field.n;
  const double m = cfg.field.mass_mT, omega = cfg.omega(), L = cfg.L(), t = cfg.t_ab();
  const auto sw = cfg.switching;
  const auto sm = cfg.smearing;
  quad::Integrand f = [=](double k) -> cplx {
    double w = omega_k(k, m);
    double chi = switching_transform(omega + w, sw);
    return measure(n, k, m) * chi * chi * smearing_factor(k, sm) * angular(n, k, L) *
           std::exp(cplx(0.0, w * t));
  };
  const double lower = cfg.field.k_lower();
  quad::Result r =
      sw.is_truncated()
          ? quad::integrate_adaptive_breaks(f, even_breaks(lower, opts.truncated_k_max, 1.0), opts.tol)
          : quad::integrate_semiinfinite_damped(f, 1.0, opts.tol, lower);
  const double lam2 = cfg.coupling_lambda_tilde * cfg.coupling_lambda_tilde;
  return scaled(r, lam2 * radial_prefactor(n) * std::exp(cplx(0.0, omega * t)));
}

cplx kernel_K(int j, double k, const PairConfig& cfg, double k3_sign) {
  if (cfg.switching.is_truncated()) throw DomainError("kernel_K: Gaussian switching only");
  if (!(k >= 0.0)) throw DomainError("kernel_K: k must be >= 0");
  const int n = cfg.field.n;
  const double w = omega_k(k, cfg.field.mass_mT);
  const double omega = cfg.omega(), t = cfg.t_ab();
  const double common = angular(n, k, cfg.L()) * smearing_factor(k, cfg.smearing);
  const double c1 = std::pow(2.0, -n - 1) * std::pow(kPi, 1.0 - 0.5 * n);
  const double c3 = std::pow(2.0, -n) * std::pow(kPi, 0.5 * (1 - n));
  switch (j) {
    case 1:
      return c1 * common * std::exp(cplx(-0.5 * (w * w + omega * omega), t * (omega - w)));
    case 2:
      return c1 * common * std::exp(cplx(-0.5 * (w * w + omega * omega), t * (omega + w)));
    case 3:
    case 4: {
      cplx pre = -kI * c3 * std::exp(cplx(-0.5 * omega * omega, t * omega));
      cplx d = specfun::scaled_dawson(w, j == 3 ? t : -t);
      return (j == 3 ? k3_sign : 1.0) * pre * d * common;
    }
    default:
      throw DomainError("kernel_K: j must be 1..4");
  }
}

cplx kernel_K34_jform(double k, const PairConfig& cfg) {
  const int n = cfg.field.n;
  const double w = omega_k(k, cfg.field.mass_mT);
  const double omega = cfg.omega(), t = cfg.t_ab();
  auto J = [&](cplx a, cplx b) {
    cplx e = std::exp(-t * t - a * a - 0.25 * b * b);
    return -kI * kSqrtPi * e * specfun::erfi((a + 0.5 * b) / std::numbers::sqrt2);
  };
  cplx a1 = 0.5 * (w + omega), b1 = cplx(w - omega, 2.0 * t);
  cplx a2 = cplx(0.5 * (w + omega), -t), b2 = w - omega;
  double pre = std::pow(2.0, -n - 1) * std::pow(kPi, 0.5 * (1 - n));
  return pre * (J(a1, b1) + J(a2, b2)) * angular(n, k, cfg.L()) *
         smearing_factor(k, cfg.smearing);
}

ComplexValue m_plus(const PairConfig& cfg, const EvalOptions& opts) {
  check_supported(cfg);
  const int n = cfg.field.n;
  const double m = cfg.field.mass_mT, omega = cfg.omega(), L = cfg.L(), t = cfg.t_ab();
  const double ta = cfg.detector_a.center_tT, tb = cfg.detector_b.center_tT;
  const double lam2 = cfg.coupling_lambda_tilde * cfg.coupling_lambda_tilde;
  const auto sw = cfg.switching;
  const auto sm = cfg.smearing;
  const double lower = cfg.field.k_lower();

  if (sw.is_truncated()) {
    quad::Integrand f = [=](double k) -> cplx {
      double w = omega_k(k, m);
      return measure(n, k, m) * switching_transform(omega - w, sw) *
             switching_transform(omega + w, sw) * std::cos(w * t) * angular(n, k, L) *
             smearing_factor(k, sm);
    };
    quad::Result r =
        quad::integrate_adaptive_breaks(f, even_breaks(lower, opts.truncated_k_max, 1.0), opts.tol);
    return scaled(r, -lam2 * radial_prefactor(n) * std::exp(cplx(0.0, omega * (ta + tb))));
  }

  quad::Integrand f = [=](double k) -> cplx {
    double w = omega_k(k, m);
    return measure(n, k, m) * std::exp(-0.5 * w * w) * std::cos(w * t) * angular(n, k, L) *
           smearing_factor(k, sm);
  };
  quad::Result r = quad::integrate_semiinfinite_damped(f, 1.0, opts.tol, lower);
  const double c1 = std::pow(2.0, -n - 1) * std::pow(kPi, 1.0 - 0.5 * n);
  cplx pre = -lam2 * 2.0 * c1 * std::exp(cplx(-0.5 * omega * omega, 2.0 * omega * ta + t * omega));
  return scaled(r, pre);
}

namespace {

// int_0^inf of g with g's algebraic tail handled by epsilon acceleration,
// or by plain damped quadrature when smearing cuts the tail off.
quad::Result radial_with_tail(const quad::Integrand& g, const PairConfig& cfg,
                              const EvalOptions& opts, double lower = 0.0) {
  const double L = cfg.L(), t = cfg.t_ab();
  if (cfg.smearing.kind == SmearingSpec::Kind::gaussian) {
    double scale = std::max(0.5, 1.0 / cfg.smearing.radius_T);
    return quad::integrate_semiinfinite_damped(g, scale, opts.tol, lower);
  }
  if (!(L > 0.0)) throw DomainError("M^-: detector separation L must be positive");
  const double ks = std::max(tail_start(t), lower + 1.0);
  quad::Result bulk = quad::integrate_adaptive_breaks(g, even_breaks(lower, ks, 1.0), opts.tol);
  quad::Tolerance ttol{opts.tol.rel, opts.tol.l1 * bulk.l1, 0.0};
  quad::Result tail = quad::integrate_oscillatory_tail(g, L, ks, ttol);
  quad::Result r;
  r.value = bulk.value + tail.value;
  r.abs_error = bulk.abs_error + tail.abs_error;
  r.evaluations = bulk.evaluations + tail.evaluations;
  r.l1 = bulk.l1 + tail.l1;
  return r;
}

ComplexValue m_minus_truncated(const PairConfig& cfg, const EvalOptions& opts) {
  const int n = cfg.field.n;
  const double L = cfg.L();
  if (!(L > 0.0)) throw DomainError("M^-: detector separation L must be positive");
  const double lam2 = cfg.coupling_lambda_tilde * cfg.coupling_lambda_tilde;
  // M^- = -(1/2) int h(s) sgn(s) C^-(s, L) ds with the closed-form commutator.
  auto h = [&](double s) { return switching_overlap(s, cfg); };
  if (n == 3) {
    cplx v = kI / (8.0 * kPi * L) * (h(L) + h(-L));
    return {lam2 * v, 0.0};
  }
  const double w = cfg.switching.half_width_T;
  const double c = -cfg.t_ab();
  const double lo = c - 2.0 * w, hi = c + 2.0 * w;
  quad::Tolerance tol{opts.tol.rel, 0.0, opts.tol.l1};
  if (n == 1) {
    quad::Result sum;
    quad::Integrand f = [&](double s) -> cplx { return h(s); };
    if (hi > L) {
      quad::Result r = quad::integrate_adaptive(f, std::max(L, lo), hi, tol);
      sum.value += r.value;
      sum.abs_error += r.abs_error;
    }
    if (lo < -L) {
      quad::Result r = quad::integrate_adaptive(f, lo, std::min(-L, hi), tol);
      sum.value += r.value;
      sum.abs_error += r.abs_error;
    }
    return scaled(sum, lam2 * 0.25 * kI);
  }
  // n = 2, s = +-L cosh u.
  const double reach = std::max(std::abs(lo), std::abs(hi)) / L;
  if (reach <= 1.0) return {0.0, 0.0};
  std::vector<double> pts{0.0, std::acosh(reach)};
  for (double e : {std::abs(lo), std::abs(hi)})
    if (e > L && e < reach * L) pts.push_back(std::acosh(e / L));
  quad::Integrand f = [&](double u) -> cplx {
    double s = L * std::cosh(u);
    return h(s) + h(-s);
  };
  quad::Result r = quad::integrate_adaptive_breaks(f, pts, tol);
  return scaled(r, lam2 * kI / (4.0 * kPi));
}

}  // namespace

ComplexValue m_minus(const PairConfig& cfg, const EvalOptions& opts) {
  check_supported(cfg);
  if (cfg.switching.is_truncated()) return m_minus_truncated(cfg, opts);
  const int n = cfg.field.n;
  const double m = cfg.field.mass_mT, omega = cfg.omega(), L = cfg.L(), t = cfg.t_ab();
  const double ta = cfg.detector_a.center_tT;
  const double lam2 = cfg.coupling_lambda_tilde * cfg.coupling_lambda_tilde;
  const auto sm = cfg.smearing;
  quad::Integrand g = [=](double k) -> cplx {
    double w = omega_k(k, m);
    return measure(n, k, m) * 2.0 * specfun::dawson_pair(w, t) * angular(n, k, L) *
           smearing_factor(k, sm);
  };
  // The commutator sector is IR finite and state independent: no cutoff.
  quad::Result r = radial_with_tail(g, cfg, opts);
  const double c3 = std::pow(2.0, -n) * std::pow(kPi, 0.5 * (1 - n));
  cplx pre = -lam2 * (-kI * c3) * std::exp(cplx(-0.5 * omega * omega, 2.0 * omega * ta + t * omega));
  return scaled(r, pre);
}

ComplexValue m_total(const PairConfig& cfg, const EvalOptions& opts) {
  check_supported(cfg);
  if (cfg.switching.is_truncated()) {
    ComplexValue p = m_plus(cfg, opts), q = m_minus(cfg, opts);
    return {p.value + q.value, p.error + q.error};
  }
  const int n = cfg.field.n;
  const double m = cfg.field.mass_mT;
  const double ta = cfg.detector_a.center_tT;
  const double lam2 = cfg.coupling_lambda_tilde * cfg.coupling_lambda_tilde;
  const double lower = cfg.field.k_lower();
  const double sign = opts.k3_sign;
  quad::Integrand all = [&](double k) -> cplx {
    cplx s = kernel_K(1, k, cfg) + kernel_K(2, k, cfg) + kernel_K(3, k, cfg, sign) +
             kernel_K(4, k, cfg);
    return measure(n, k, m) * s;
  };
  quad::Integrand k34 = [&](double k) -> cplx {
    return measure(n, k, m) * (kernel_K(3, k, cfg, sign) + kernel_K(4, k, cfg));
  };
  // K1, K2 are Gaussian damped, so the tail carries K3 + K4 only; below the
  // IR cutoff only K3 + K4 contribute, as in m_minus.
  quad::Result r;
  if (cfg.smearing.kind == SmearingSpec::Kind::gaussian) {
    r = quad::integrate_semiinfinite_damped(all, std::max(0.5, 1.0 / cfg.smearing.radius_T),
                                            opts.tol, lower);
  } else {
    if (!(cfg.L() > 0.0)) throw DomainError("M: detector separation L must be positive");
    const double ks = std::max(tail_start(cfg.t_ab()), lower + 1.0);
    quad::Result bulk = quad::integrate_adaptive_breaks(all, even_breaks(lower, ks, 1.0), opts.tol);
    quad::Tolerance ttol{opts.tol.rel, opts.tol.l1 * bulk.l1, 0.0};
    quad::Result tail = quad::integrate_oscillatory_tail(k34, cfg.L(), ks, ttol);
    r.value = bulk.value + tail.value;
    r.abs_error = bulk.abs_error + tail.abs_error;
  }
  if (lower > 0.0) {
    quad::Result ir = quad::integrate_adaptive(k34, 0.0, lower, opts.tol);
    r.value += ir.value;
    r.abs_error += ir.abs_error;
  }
  return scaled(r, -lam2 * std::exp(cplx(0.0, 2.0 * cfg.omega() * ta)));
}

PositionSpaceM m_positionspace_oracle(const PairConfig& cfg, const std::vector<double>& ladder) {
  cfg.validate();
  if (cfg.field.n != 3 || cfg.field.mass_mT != 0.0 ||
      cfg.smearing.kind != SmearingSpec::Kind::pointlike)
    throw DomainError("m_positionspace_oracle: needs n = 3, m = 0, pointlike detectors");
  const double L = cfg.L();
  if (!(L > 0.0)) throw DomainError("m_positionspace_oracle: L must be positive");
  const double lam2 = cfg.coupling_lambda_tilde * cfg.coupling_lambda_tilde;
  const double c = -cfg.t_ab();
  const double R = cfg.switching.is_truncated() ? 2.0 * cfg.switching.half_width_T : 12.0;
  const double lo = c - R, hi = c + R;
  std::vector<double> pts{lo, hi, c};
  for (double p : {-L, L, 0.0})
    if (p > lo && p < hi) pts.push_back(p);

  std::map<double, cplx> memo;
  auto h = [&](double s) {
    auto it = memo.find(s);
    if (it != memo.end()) return it->second;
    cplx v = switching_overlap(s, cfg);
    memo.emplace(s, v);
    return v;
  };
  model::FieldSpec f3;
  f3.n = 3;
  auto family = [&](bool commutator_part) {
    return [&, commutator_part](double eps) {
      quad::Integrand g = [&](double s) -> cplx {
        cplx W = wightman::wightman_closed(f3, {std::abs(s), L}, eps);
        cplx part = commutator_part ? cplx(0.0, W.imag()) : cplx(W.real(), 0.0);
        return -h(s) * part;
      };
      return quad::integrate_adaptive_breaks(g, pts, {1e-11, 0.0, 1e-13});
    };
  };
  // The commutator part can vanish identically; its accuracy is measured
  // against the size of the anti-commutator integrand.
  quad::Result p = quad::integrate_eps_family(family(false), ladder, {1e-5, 0.0, 1e-8});
  quad::Result q = quad::integrate_eps_family(family(true), ladder, {1e-5, 1e-8 * p.l1, 0.0});
  PositionSpaceM out;
  out.m_plus = {lam2 * p.value, lam2 * p.abs_error};
  out.m_minus = {lam2 * q.value, lam2 * q.abs_error};
  out.m_total = {out.m_plus.value + out.m_minus.value, out.m_plus.error + out.m_minus.error};
  return out;
}

MatrixElements compute_all(const PairConfig& cfg, const EvalOptions& opts) {
  check_supported(cfg);
  MatrixElements me;
  RealValue l = ljj(cfg, opts);
  me.l_aa = me.l_bb = l.value;
  me.l_error = l.error;
  me.l_ab = lab_cross(cfg, opts);
  me.m_plus = m_plus(cfg, opts);
  me.m_minus = m_minus(cfg, opts);
  if (opts.direct_total)
    me.m_total = m_total(cfg, opts);
  else
    me.m_total = {me.m_plus.value + me.m_minus.value, me.m_plus.error + me.m_minus.error};
  return me;
}

}  // namespace harvest::me
