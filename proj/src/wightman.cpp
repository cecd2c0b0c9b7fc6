#include "harvest/wightman.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "harvest/errors.hpp"
#include "harvest/specfun.hpp"

namespace harvest::wightman {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

double radial_prefactor(int n) { return std::pow(2.0, -n) * std::pow(kPi, -0.5 * n); }

double sgn(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }

// Hermite polynomial H_j(u), physicists' convention.
double hermite(int j, double u) {
  double h0 = 1.0, h1 = 2.0 * u;
  if (j == 0) return h0;
  for (int k = 1; k < j; ++k) {
    double h2 = 2.0 * u * h1 - 2.0 * k * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

void check_interval(const SpacetimeInterval& iv) {
  if (!(iv.dx_T >= 0.0) || !std::isfinite(iv.dt_T) || !std::isfinite(iv.dx_T))
    throw DomainError("interval: need finite dt and dx >= 0");
}

// Radial integrand of the Fourier representation; trig = sin for C^-, cos
// for C^+. Includes the Gaussian smoothing factor in omega.
quad::Result fourier_route(const FieldSpec& field, SpacetimeInterval iv, double width,
                           quad::Tolerance tol, bool sine, double lower) {
  const int n = field.n;
  const double m = field.mass_mT;
  const double b = 0.5 * n;
  quad::Integrand f = [=](double k) -> cplx {
    double w = std::sqrt(k * k + m * m);
    double meas = std::pow(k, n - 1) / w;
    double angular = specfun::reg_hyp0f1(b, -0.25 * k * k * iv.dx_T * iv.dx_T);
    double osc = sine ? std::sin(w * iv.dt_T) : std::cos(w * iv.dt_T);
    return meas * osc * angular * std::exp(-0.25 * width * width * w * w);
  };
  quad::Result r = quad::integrate_semiinfinite_damped(f, 2.0 / width, tol, lower);
  double pre = 2.0 * radial_prefactor(n);
  cplx factor = sine ? -kI * pre : cplx(pre);
  r.value *= factor;
  r.abs_error *= pre;
  r.l1 *= pre;
  return r;
}

}  // namespace

cplx wightman_closed(const FieldSpec& field, SpacetimeInterval iv, double eps_T) {
  field.validate();
  check_interval(iv);
  if (!(eps_T > 0.0)) throw DomainError("wightman_closed: eps must be positive");
  const int n = field.n;
  const cplx dt(iv.dt_T, -eps_T);
  // Z = -(dt - i eps)^2 + dx^2, never on the negative real axis for eps > 0.
  const cplx Z = iv.dx_T * iv.dx_T - dt * dt;
  const cplx s = std::sqrt(Z);
  if (!(s.real() > 0.0)) throw DomainError("wightman_closed: branch point reached");
  if (field.mass_mT > 0.0) {
    const double m = field.mass_mT;
    const double nu = 0.5 * (n - 1);
    cplx k = specfun::bessel_k(nu, m * s);
    return std::pow(m, nu) / std::pow(2.0 * kPi, 0.5 * (n + 1)) * k / std::pow(s, nu);
  }
  if (n == 1) {
    const double lam = *field.ir_cutoff_LambdaT;
    return -1.0 / (4.0 * kPi) * std::log(lam * lam * Z);
  }
  return std::tgamma(0.5 * (n - 1)) / (4.0 * std::pow(kPi, 0.5 * (n + 1))) *
         std::pow(s, -double(n - 1));
}

std::vector<double> odd_dimension_coefficients(int n) {
  if (n < 3 || n % 2 == 0) throw DomainError("odd_dimension_coefficients: n must be odd, >= 3");
  CommutatorDescriptor d = commutator_closed(n, {0.0, 1.0});
  std::vector<double> a((n - 3) / 2 + 1, 0.0);
  for (const auto& t : d.terms)
    if (t.branch == +1) a[t.order] = t.a;
  return a;
}

CommutatorDescriptor commutator_closed(int n, SpacetimeInterval iv) {
  check_interval(iv);
  if (n < 1) throw DomainError("commutator_closed: n must be >= 1");
  CommutatorDescriptor d;
  d.n = n;
  d.dx_T = iv.dx_T;
  if (n == 1) {
    d.kind = CommutatorDescriptor::Kind::step;
    return d;
  }
  if (n == 2) {
    d.kind = CommutatorDescriptor::Kind::inverse_root;
    return d;
  }
  if (n % 2 == 0)
    throw DomainError("commutator_closed: no closed form for even n >= 4, use commutator_numeric");
  if (!(iv.dx_T > 0.0)) throw DomainError("commutator_closed: need dx > 0 for odd n >= 3");

  // (order, branch) -> a, with power of 1/r equal to n - 2 - order.
  std::map<std::pair<int, int>, double> a{{{0, +1}, 1.0 / (4.0 * kPi)},
                                          {{0, -1}, -1.0 / (4.0 * kPi)}};
  for (int dim = 3; dim < n; dim += 2) {
    std::map<std::pair<int, int>, double> next;
    for (const auto& [key, coef] : a) {
      auto [j, branch] = key;
      int p = dim - 2 - j;
      next[{j, branch}] += p * coef / (2.0 * kPi);
      next[{j + 1, branch}] += -branch * coef / (2.0 * kPi);
    }
    a = std::move(next);
  }
  d.kind = CommutatorDescriptor::Kind::null_deltas;
  for (const auto& [key, coef] : a) {
    NullDeltaTerm t;
    t.order = key.first;
    t.branch = key.second;
    t.a = key.second == +1 ? coef : (t.order % 2 == 0 ? -coef : coef);
    t.coefficient = kI * coef / std::pow(iv.dx_T, n - 2 - t.order);
    d.terms.push_back(t);
  }
  return d;
}

cplx CommutatorDescriptor::value_at(double dt) const {
  const double r = dx_T;
  switch (kind) {
    case Kind::step: {
      double a = std::abs(dt);
      double theta = a > r ? 1.0 : (a == r ? 0.5 : 0.0);
      return -0.5 * kI * sgn(dt) * theta;
    }
    case Kind::inverse_root: {
      double q = dt * dt - r * r;
      if (q == 0.0) throw DomainError("commutator: n = 2 value is singular on the null cone");
      if (q < 0.0) return 0.0;
      return -kI * sgn(dt) / (2.0 * kPi * std::sqrt(q));
    }
    case Kind::null_deltas:
      break;
  }
  throw DomainError("commutator: odd n >= 3 is a distribution on the null cone; smear it");
}

int CommutatorDescriptor::highest_order() const {
  int h = 0;
  for (const auto& t : terms) h = std::max(h, t.order);
  return h;
}

void TestFunctionPair::validate() const {
  if (!(first.width_T > 0.0) || !(second.width_T > 0.0))
    throw DomainError("test functions: widths must be positive");
}

double TestFunctionPair::area() const { return kPi * first.width_T * second.width_T; }

double TestFunctionPair::sigma() const { return std::hypot(first.width_T, second.width_T); }

double TestFunctionPair::offset() const { return first.center_T - second.center_T; }

double TestFunctionPair::density(double s, int derivative) const {
  const double S = sigma();
  const double amp = std::sqrt(kPi) * first.width_T * second.width_T / S;
  const double u = (s - offset()) / S;
  double v = amp * std::exp(-u * u);
  if (derivative == 0) return v;
  return v * std::pow(-1.0 / S, derivative) * hermite(derivative, u);
}

cplx smeared_commutator(int n, const TestFunctionPair& f, double dx) {
  f.validate();
  if (!(dx >= 0.0)) throw DomainError("smeared_commutator: dx must be >= 0");
  const double S = f.sigma();
  const double c = f.offset();
  if (n == 1) {
    const double amp = std::sqrt(kPi) * f.first.width_T * f.second.width_T / S;
    double v = amp * 0.5 * std::sqrt(kPi) * S *
               (std::erfc((dx - c) / S) - std::erfc((dx + c) / S));
    return -0.5 * kI * v;
  }
  if (n == 2) {
    if (!(dx > 0.0)) throw DomainError("smeared_commutator: n = 2 needs dx > 0");
    double reach = (std::abs(c) + 40.0 * S) / dx;
    double U = std::acosh(std::max(1.0, reach)) + 1.0;
    std::vector<double> pts{0.0, U};
    if (std::abs(c) > dx) pts.push_back(std::acosh(std::abs(c) / dx));
    quad::Integrand g = [&](double u) -> cplx {
      double s = dx * std::cosh(u);
      return f.density(s) - f.density(-s);
    };
    quad::Result r = quad::integrate_adaptive_breaks(g, pts, {1e-12, 0.0, 1e-14});
    return -kI / (2.0 * kPi) * r.value;
  }
  CommutatorDescriptor d = commutator_closed(n, {0.0, dx});
  cplx sum = 0.0;
  for (const auto& t : d.terms) {
    // int rho(s) delta^(j)(s + b r) ds = (-1)^j rho^(j)(-b r)
    double sign = t.order % 2 == 0 ? 1.0 : -1.0;
    sum += t.coefficient * sign * f.density(-t.branch * dx, t.order);
  }
  return sum;
}

quad::Result commutator_numeric(const FieldSpec& field, SpacetimeInterval iv, double width,
                                quad::Tolerance tol) {
  field.validate();
  check_interval(iv);
  if (!(width > 0.0)) throw DomainError("commutator_numeric: smearing width must be positive");
  // The commutator is state independent and IR finite: always from k = 0.
  return fourier_route(field, iv, width, tol, true, 0.0);
}

quad::Result anticommutator_numeric(const FieldSpec& field, SpacetimeInterval iv, double width,
                                    quad::Tolerance tol) {
  field.validate();
  check_interval(iv);
  if (!(width > 0.0)) throw DomainError("anticommutator_numeric: smearing width must be positive");
  return fourier_route(field, iv, width, tol, false, field.k_lower());
}

quad::Result smeared_wightman(const FieldSpec& field, const TestFunctionPair& f, double dx,
                              const std::vector<double>& ladder) {
  field.validate();
  f.validate();
  const double S = f.sigma();
  const double c = f.offset();
  const double lo = c - 12.0 * S, hi = c + 12.0 * S;
  std::vector<double> pts{lo, hi, c};
  for (double p : {-dx, dx, 0.0})
    if (p > lo && p < hi) pts.push_back(p);
  auto g = [&](double eps) {
    quad::Integrand h = [&](double s) -> cplx {
      return f.density(s) * wightman_closed(field, {s, dx}, eps);
    };
    return quad::integrate_adaptive_breaks(h, pts, {1e-12, 0.0, 1e-13});
  };
  return quad::integrate_eps_family(g, ladder, {1e-7, 0.0, 1e-9});
}

HuygensReport huygens_check(int n, Region region, double tol) {
  if (n < 1) throw DomainError("huygens_check: n must be >= 1");
  const double dx = 5.0;
  const double w = 0.25;
  FieldSpec field;
  field.n = n;
  auto smeared = [&](double c) -> double {
    TestFunctionPair p{{c, w}, {0.0, w}};
    if (n <= 2 || n % 2 == 1) return std::abs(smeared_commutator(n, p, dx));
    quad::Result r = commutator_numeric(field, {c, dx}, p.sigma(), {1e-10, 0.0, 1e-13});
    return std::abs(r.value) * p.area();
  };

  HuygensReport rep;
  for (int i = -20; i <= 20; ++i) {
    double c = dx + 0.05 * i;
    rep.peak = std::max({rep.peak, smeared(c), smeared(-c)});
  }
  std::vector<double> grid;
  if (region == Region::interior)
    grid = {dx + 2.0, dx + 3.0, dx + 5.0, 2.0 * dx, 3.0 * dx};
  else
    grid = {0.0, 1.0, 2.0, dx - 2.0};
  for (double c : grid) rep.leakage = std::max({rep.leakage, smeared(c), smeared(-c)});
  rep.silent = rep.leakage <= tol * rep.peak;
  return rep;
}

}  // namespace harvest::wightman
