#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace harvest::quad {

using cplx = std::complex<double>;
using Integrand = std::function<cplx(double)>;

// Stopping rule: error <= max(rel |I|, abs, l1 * int |f|).
// The l1 term lets callers ask for accuracy relative to the integrand's size
// when the integral itself cancels to nearly zero.
struct Tolerance {
  double rel = 1e-8;
  double abs = 1e-12;
  double l1 = 0.0;
};

struct Result {
  cplx value{};
  double abs_error = 0.0;
  long evaluations = 0;
  double l1 = 0.0;  // estimate of int |f|
};

constexpr long kPanelBudget = 1'000'000;

// 15-point Kronrod rule with the embedded 7-point Gauss error estimate.
Result gauss_kronrod15(const Integrand& f, double a, double b);

// Globally adaptive bisection on [a, b].
Result integrate_adaptive(const Integrand& f, double a, double b, Tolerance tol,
                          long budget = kPanelBudget);

// Same, but the interval is first split at the given interior points.
Result integrate_adaptive_breaks(const Integrand& f, std::vector<double> points,
                                 Tolerance tol, long budget = kPanelBudget);

// int_lower^inf f for Gaussian-damped integrands; panels of width
// damping_scale are added until a panel is negligible.
Result integrate_semiinfinite_damped(const Integrand& f, double damping_scale,
                                     Tolerance tol, double lower = 0.0);

// int_{k_start}^inf f for an amplitude times an oscillation of angular
// frequency phase_frequency. Half-period panels, Wynn epsilon acceleration.
Result integrate_oscillatory_tail(const Integrand& f, double phase_frequency,
                                  double k_start, Tolerance tol);

// Convergence-factor cross-check for an oscillatory tail: multiply by
// exp(-eps k), integrate, extrapolate eps -> 0 over a geometric ladder.
Result integrate_convergence_factor(const Integrand& f, double phase_frequency,
                                    double k_start, Tolerance tol);

// Evaluate g on a decreasing ladder and extrapolate to eps = 0 with a
// polynomial in eps (Neville). Error estimate: spread between the two
// highest-order extrapolants.
Result integrate_eps_family(const std::function<Result(double)>& g,
                            const std::vector<double>& eps_ladder, Tolerance tol);

const std::vector<double>& default_eps_ladder();

// Wynn's epsilon algorithm on a sequence of partial sums. Returns the
// latest estimate and the difference to the previous one.
struct EpsilonEstimate {
  cplx value;
  double error;
};
EpsilonEstimate wynn_epsilon(const std::vector<cplx>& partial_sums);

}  // namespace harvest::quad
