#include "harvest/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>

#include "harvest/errors.hpp"

namespace harvest::quad {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// QUADPACK qk15 nodes and weights.
constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

double target_error(const Tolerance& tol, cplx value, double l1) {
  return std::max({tol.rel * std::abs(value), tol.abs, tol.l1 * l1});
}

void check_value(cplx v) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw AccuracyError("quadrature: integrand produced a non-finite value");
}

struct Segment {
  double a, b;
  Result r;
  bool operator<(const Segment& o) const { return r.abs_error < o.r.abs_error; }
};

}  // namespace

Result gauss_kronrod15(const Integrand& f, double a, double b) {
  const double centr = 0.5 * (a + b);
  const double hlgth = 0.5 * (b - a);
  const double dhlgth = std::abs(hlgth);

  cplx fv1[7], fv2[7];
  cplx fc = f(centr);
  cplx resg = fc * wg[3];
  cplx resk = fc * wgk[7];
  double resabs = std::abs(fc) * wgk[7];
  for (int j = 0; j < 3; ++j) {
    int jtw = 2 * j + 1;
    double absc = hlgth * xgk[jtw];
    cplx f1 = f(centr - absc), f2 = f(centr + absc);
    fv1[jtw] = f1;
    fv2[jtw] = f2;
    resg += wg[j] * (f1 + f2);
    resk += wgk[jtw] * (f1 + f2);
    resabs += wgk[jtw] * (std::abs(f1) + std::abs(f2));
  }
  for (int j = 0; j < 4; ++j) {
    int jtwm1 = 2 * j;
    double absc = hlgth * xgk[jtwm1];
    cplx f1 = f(centr - absc), f2 = f(centr + absc);
    fv1[jtwm1] = f1;
    fv2[jtwm1] = f2;
    resk += wgk[jtwm1] * (f1 + f2);
    resabs += wgk[jtwm1] * (std::abs(f1) + std::abs(f2));
  }
  cplx reskh = resk * 0.5;
  double resasc = wgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j)
    resasc += wgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

  Result out;
  out.value = resk * hlgth;
  check_value(out.value);
  resabs *= dhlgth;
  resasc *= dhlgth;
  double err = std::abs((resk - resg) * hlgth);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps))
    err = std::max(kEps * 50.0 * resabs, err);
  out.abs_error = err;
  out.evaluations = 15;
  out.l1 = resabs;
  return out;
}

Result integrate_adaptive_breaks(const Integrand& f, std::vector<double> points,
                                 Tolerance tol, long budget) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() < 2 || !(points.front() < points.back()))
    throw DomainError("integrate_adaptive: need a < b");

  std::priority_queue<Segment> active;
  std::vector<Segment> settled;
  Result total;
  for (size_t i = 0; i + 1 < points.size(); ++i) {
    Segment s{points[i], points[i + 1], gauss_kronrod15(f, points[i], points[i + 1])};
    total.evaluations += s.r.evaluations;
    active.push(s);
  }

  auto sum_up = [&]() {
    // Fixed summation order: settled segments, then active ones by position.
    std::vector<Segment> all = settled;
    auto copy = active;
    while (!copy.empty()) {
      all.push_back(copy.top());
      copy.pop();
    }
    std::sort(all.begin(), all.end(), [](const Segment& x, const Segment& y) { return x.a < y.a; });
    Result r;
    for (const auto& s : all) {
      r.value += s.r.value;
      r.abs_error += s.r.abs_error;
      r.l1 += s.r.l1;
    }
    return r;
  };

  cplx value = 0.0;
  double err = 0.0, l1 = 0.0;
  {
    auto copy = active;
    while (!copy.empty()) {
      value += copy.top().r.value;
      err += copy.top().r.abs_error;
      l1 += copy.top().r.l1;
      copy.pop();
    }
  }

  for (;;) {
    double target = target_error(tol, value, l1);
    // Below this the per-segment roundoff floor makes progress impossible.
    target = std::max(target, 100.0 * kEps * l1);
    if (err <= target || active.empty()) break;
    if (total.evaluations + 30 > budget) {
      Result r = sum_up();
      throw AccuracyError("integrate_adaptive: evaluation budget exhausted", r.value,
                          r.abs_error);
    }
    Segment worst = active.top();
    active.pop();
    double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        (worst.b - worst.a) < 1e-13 * std::max(1.0, std::abs(mid))) {
      settled.push_back(worst);
      continue;
    }
    Segment left{worst.a, mid, gauss_kronrod15(f, worst.a, mid)};
    Segment right{mid, worst.b, gauss_kronrod15(f, mid, worst.b)};
    total.evaluations += 30;
    value += left.r.value + right.r.value - worst.r.value;
    err += left.r.abs_error + right.r.abs_error - worst.r.abs_error;
    l1 += left.r.l1 + right.r.l1 - worst.r.l1;
    active.push(left);
    active.push(right);
  }

  Result r = sum_up();
  r.evaluations = total.evaluations;
  return r;
}

Result integrate_adaptive(const Integrand& f, double a, double b, Tolerance tol,
                          long budget) {
  if (!(a < b)) throw DomainError("integrate_adaptive: need a < b");
  return integrate_adaptive_breaks(f, {a, b}, tol, budget);
}

Result integrate_semiinfinite_damped(const Integrand& f, double damping_scale,
                                     Tolerance tol, double lower) {
  if (!(damping_scale > 0.0)) throw DomainError("damping scale must be positive");
  // Locate the truncation point panel by panel.
  std::vector<double> points{lower};
  cplx rough = 0.0;
  double rough_l1 = 0.0;
  double last_l1 = 0.0;
  long evals = 0;
  for (int i = 0;; ++i) {
    double a = lower + i * damping_scale;
    double b = a + damping_scale;
    Result p = gauss_kronrod15(f, a, b);
    evals += p.evaluations;
    rough += p.value;
    rough_l1 += p.l1;
    points.push_back(b);
    last_l1 = p.l1;
    double target = target_error(tol, rough, rough_l1);
    if (i >= 5 && p.l1 <= 1e-3 * target) break;
    if (evals > kPanelBudget / 4)
      throw AccuracyError("integrate_semiinfinite_damped: integrand does not decay", rough,
                          p.l1);
  }
  Result r = integrate_adaptive_breaks(f, points, tol, kPanelBudget - evals);
  r.abs_error += last_l1;
  r.evaluations += evals;
  return r;
}

EpsilonEstimate wynn_epsilon(const std::vector<cplx>& partial_sums) {
  const size_t n = partial_sums.size();
  if (n == 0) return {0.0, 0.0};
  if (n < 3) return {partial_sums.back(), n == 2 ? std::abs(partial_sums[1] - partial_sums[0]) : 0.0};

  // prev = column k-1, cur = column k; column index 0 holds the sums.
  std::vector<cplx> prev(n + 1, 0.0), cur(partial_sums);
  cplx best = partial_sums.back();
  double best_err = std::abs(partial_sums[n - 1] - partial_sums[n - 2]);
  cplx last_even_top = best;
  for (size_t k = 0; cur.size() >= 2; ++k) {
    std::vector<cplx> next(cur.size() - 1);
    bool broken = false;
    for (size_t j = 0; j + 1 < cur.size(); ++j) {
      cplx d = cur[j + 1] - cur[j];
      if (d == cplx(0.0)) {
        broken = true;
        break;
      }
      next[j] = prev[j + 1] + 1.0 / d;
    }
    if (broken) break;
    prev = cur;
    cur = next;
    // Odd k+1 columns are auxiliary; even columns carry estimates.
    if ((k + 1) % 2 == 0 && !cur.empty()) {
      if (!std::isfinite(cur.back().real()) || !std::isfinite(cur.back().imag())) break;
      cplx est = cur.back();
      double e1 = cur.size() >= 2 ? std::abs(cur[cur.size() - 1] - cur[cur.size() - 2]) : best_err;
      double e2 = std::abs(est - last_even_top);
      last_even_top = est;
      best = est;
      best_err = std::max(e1, e2);
    }
  }
  return {best, best_err};
}

Result integrate_oscillatory_tail(const Integrand& f, double phase_frequency,
                                  double k_start, Tolerance tol) {
  if (!(phase_frequency > 0.0)) throw DomainError("phase frequency must be positive");
  const double half = std::numbers::pi / phase_frequency;
  const double first = std::ceil(k_start / half + 1e-12) * half + half;

  Tolerance ptol{tol.rel * 0.1, tol.abs * 0.01, tol.l1 * 0.01};
  std::vector<cplx> sums;
  Result lead = integrate_adaptive(f, k_start, first, ptol);
  cplx acc = lead.value;
  double l1 = lead.l1;
  double panel_err = lead.abs_error;
  long evals = lead.evaluations;
  sums.push_back(acc);

  constexpr int kMaxPanels = 600;
  constexpr size_t kWindow = 40;
  cplx prev_est = acc;
  int agree = 0;
  for (int j = 0; j < kMaxPanels; ++j) {
    double a = first + j * half;
    Result p = integrate_adaptive(f, a, a + half, ptol);
    acc += p.value;
    l1 += p.l1;
    panel_err += p.abs_error;
    evals += p.evaluations;
    sums.push_back(acc);
    if (sums.size() < 6) continue;
    std::vector<cplx> window(sums.end() - std::min(sums.size(), kWindow), sums.end());
    EpsilonEstimate e = wynn_epsilon(window);
    double target = target_error(tol, e.value, l1 / double(sums.size()));
    double drift = std::abs(e.value - prev_est);
    prev_est = e.value;
    if (std::max(e.error, drift) <= target) {
      if (++agree >= 2) {
        Result r;
        r.value = e.value;
        r.abs_error = std::max(e.error, drift) + panel_err;
        r.evaluations = evals;
        r.l1 = l1;
        return r;
      }
    } else {
      agree = 0;
    }
  }
  throw AccuracyError("integrate_oscillatory_tail: epsilon acceleration did not converge",
                      prev_est, 0.0);
}

Result integrate_convergence_factor(const Integrand& f, double phase_frequency,
                                    double k_start, Tolerance tol) {
  const double half = std::numbers::pi / phase_frequency;
  std::vector<double> ladder;
  for (int i = 0; i < 7; ++i) ladder.push_back(phase_frequency / 8.0 * std::pow(0.5, i));
  auto g = [&](double eps) {
    double span = 45.0 / eps;
    std::vector<double> pts;
    for (double k = k_start; k < k_start + span; k += 8 * half) pts.push_back(k);
    pts.push_back(k_start + span);
    Integrand damped = [&](double k) { return f(k) * std::exp(-eps * (k - k_start)); };
    Tolerance t{tol.rel * 0.01, tol.abs * 0.01, tol.l1 * 0.01};
    return integrate_adaptive_breaks(damped, pts, t);
  };
  return integrate_eps_family(g, ladder, Tolerance{1.0, 0.0, 0.0});
}

const std::vector<double>& default_eps_ladder() {
  static const std::vector<double> ladder{0.2, 0.1, 0.05, 0.025, 0.0125};
  return ladder;
}

Result integrate_eps_family(const std::function<Result(double)>& g,
                            const std::vector<double>& eps_ladder, Tolerance tol) {
  const size_t n = eps_ladder.size();
  if (n < 2) throw AccuracyError("integrate_eps_family: ladder needs two or more points");
  for (size_t i = 0; i < n; ++i) {
    if (!(eps_ladder[i] > 0.0)) throw AccuracyError("integrate_eps_family: eps must be positive");
    if (i > 0 && !(eps_ladder[i] < eps_ladder[i - 1]))
      throw AccuracyError("integrate_eps_family: ladder must be strictly decreasing");
  }
  std::vector<cplx> v(n);
  Result out;
  double eval_err = 0.0;
  for (size_t i = 0; i < n; ++i) {
    Result r = g(eps_ladder[i]);
    v[i] = r.value;
    eval_err = std::max(eval_err, r.abs_error);
    out.evaluations += r.evaluations;
    out.l1 = std::max(out.l1, r.l1);
  }
  // Neville tableau evaluated at eps = 0, from index lo to n-1.
  auto neville = [&](size_t lo) {
    std::vector<cplx> p(v.begin() + lo, v.end());
    const size_t m = p.size();
    for (size_t k = 1; k < m; ++k)
      for (size_t i = 0; i + k < m; ++i) {
        double xi = eps_ladder[lo + i], xk = eps_ladder[lo + i + k];
        p[i] = (xi * p[i + 1] - xk * p[i]) / (xi - xk);
      }
    return p[0];
  };
  cplx full = neville(0);
  cplx reduced = neville(1);
  out.value = full;
  out.abs_error = std::abs(full - reduced) + eval_err;
  check_value(full);
  double target = target_error(tol, full, out.l1);
  if (out.abs_error > target)
    throw AccuracyError("integrate_eps_family: extrapolation spread above tolerance", full,
                        out.abs_error);
  return out;
}

}  // namespace harvest::quad
