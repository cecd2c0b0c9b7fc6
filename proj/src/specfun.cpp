#include "harvest/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace harvest::specfun {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr cplx kI{0.0, 1.0};

// Weideman's rational approximation of w(z) in the upper half plane.
// Coefficients come from a discrete Fourier transform done once.
struct Weideman {
  static constexpr int N = 40;
  double L;
  std::array<double, N> a;  // highest power first

  Weideman() {
    const int M = 2 * N;
    const int M2 = 2 * M;
    L = std::sqrt(N / std::sqrt(2.0));
    // Samples f(t_k), k = -M+1..M-1, with a leading zero; fftshift then DFT.
    std::vector<double> f(M2, 0.0);
    for (int k = -M + 1; k <= M - 1; ++k) {
      double theta = k * kPi / M;
      double t = L * std::tan(theta / 2);
      f[k + M] = std::exp(-t * t) * (L * L + t * t);
    }
    std::vector<double> shifted(M2);
    for (int i = 0; i < M2; ++i) shifted[i] = f[(i + M) % M2];
    for (int j = 1; j <= N; ++j) {
      double re = 0.0;
      for (int i = 0; i < M2; ++i)
        re += shifted[i] * std::cos(2.0 * kPi * double(j) * double(i) / M2);
      a[N - j] = re / M2;
    }
  }

  cplx operator()(cplx z) const {
    cplx den = L - kI * z;
    cplx Z = (L + kI * z) / den;
    cplx p = 0.0;
    for (double c : a) p = p * Z + c;
    return 2.0 * p / (den * den) + (1.0 / kSqrtPi) / den;
  }
};

const Weideman& weideman() {
  static const Weideman w;
  return w;
}

// Laplace continued fraction, accurate for |z| >= 8, Im z >= 0.
cplx w_continued_fraction(cplx z) {
  cplx r = 0.0;
  for (int k = 40; k >= 1; --k) r = (0.5 * k) / (z - r);
  return kI / kSqrtPi / (z - r);
}

cplx w_upper(cplx z) {
  if (std::abs(z) >= 8.0) return w_continued_fraction(z);
  return weideman()(z);
}

cplx dawson_taylor(cplx z) {
  // F(z) = sum_k (-1)^k 2^k z^(2k+1) / (2k+1)!!
  cplx z2 = z * z;
  cplx term = z;
  cplx sum = z;
  for (int k = 1; k < 60; ++k) {
    term *= -2.0 * z2 / double(2 * k + 1);
    sum += term;
    if (std::abs(term) < kEps * std::abs(sum)) break;
  }
  return sum;
}

cplx erfi_taylor(cplx z) {
  // erfi(z) = 2/sqrt(pi) sum_k z^(2k+1) / (k! (2k+1))
  cplx z2 = z * z;
  cplx pw = z;
  cplx sum = z;
  for (int k = 1; k < 60; ++k) {
    pw *= z2 / double(k);
    cplx term = pw / double(2 * k + 1);
    sum += term;
    if (std::abs(term) < kEps * std::abs(sum)) break;
  }
  return 2.0 / kSqrtPi * sum;
}

void check_finite(cplx v, const char* who) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw RangeError(std::string(who) + ": result overflows double precision");
}

// Temme series for K_mu, K_{mu+1} with |mu| <= 1/2 and small |z|.
void bessel_k_temme(double mu, cplx z, cplx& kmu, cplx& kmu1) {
  const double euler = 0.57721566490153286061;
  double gam1, gam2;
  double gampl = 1.0 / std::tgamma(1.0 + mu);  // 1/Gamma(1+mu)
  double gammi = 1.0 / std::tgamma(1.0 - mu);  // 1/Gamma(1-mu)
  if (std::abs(mu) < 1e-3) {
    // Taylor coefficients of 1/Gamma(1+x).
    const double c3 = -0.0420026350340952355;
    const double c5 = -0.0421977345555443367;
    double m2 = mu * mu;
    gam1 = -(euler + c3 * m2 + c5 * m2 * m2);
  } else {
    gam1 = (gammi - gampl) / (2.0 * mu);
  }
  gam2 = (gammi + gampl) / 2.0;

  cplx x2 = 0.5 * z;
  double pimu = kPi * mu;
  double fact = std::abs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
  cplx d = -std::log(x2);
  cplx e = mu * d;
  cplx fact2 = std::abs(e) < kEps ? cplx(1.0) : std::sinh(e) / e;
  cplx ff = fact * (gam1 * std::cosh(e) + gam2 * fact2 * d);
  cplx sum = ff;
  cplx ee = std::exp(e);
  cplx p = 0.5 * ee / gampl;
  cplx q = 0.5 / (ee * gammi);
  cplx c = 1.0;
  cplx dd = x2 * x2;
  cplx sum1 = p;
  for (int i = 1; i < 500; ++i) {
    ff = (double(i) * ff + p + q) / (double(i) * i - mu * mu);
    c *= dd / double(i);
    p /= (double(i) - mu);
    q /= (double(i) + mu);
    cplx del = c * ff;
    sum += del;
    sum1 += c * (p - double(i) * ff);
    if (std::abs(del) < kEps * std::abs(sum)) break;
  }
  kmu = sum;
  kmu1 = sum1 * (2.0 / z);
}

// Steed's continued fraction for K_mu, K_{mu+1}, |z| >= 2, Re z > 0.
void bessel_k_steed(double mu, cplx z, cplx& kmu, cplx& kmu1) {
  cplx b = 2.0 * (1.0 + z);
  cplx d = 1.0 / b;
  cplx h = d, delh = d;
  cplx q1 = 0.0, q2 = 1.0;
  double a1 = 0.25 - mu * mu;
  cplx q = a1, c = a1;
  double a = -a1;
  cplx s = 1.0 + q * delh;
  int i = 2;
  for (; i < 5000; ++i) {
    a -= 2.0 * (i - 1);
    c = -a * c / double(i);
    cplx qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    cplx dels = q * delh;
    s += dels;
    if (std::abs(dels) < kEps * std::abs(s)) break;
  }
  if (i == 5000) throw AccuracyError("bessel_k: continued fraction did not converge");
  h = a1 * h;
  kmu = std::sqrt(kPi / (2.0 * z)) * std::exp(-z) / s;
  kmu1 = kmu * (mu + z + 0.5 - h) / z;
}

}  // namespace

double gamma(double x) {
  if (x <= 0.0 && std::floor(x) == x)
    throw DomainError("gamma: pole at non-positive integer " + std::to_string(x));
  return std::tgamma(x);
}

cplx faddeeva(cplx z) {
  if (z.imag() >= 0.0) return w_upper(z);
  // w(z) = 2 exp(-z^2) - w(-z)
  cplx e = std::exp(-z * z);
  check_finite(e, "faddeeva");
  return 2.0 * e - w_upper(-z);
}

cplx dawson(cplx z) {
  if (std::abs(z) < 0.5) return dawson_taylor(z);
  if (z.imag() < 0.0) return -dawson(-z);
  cplx e = std::exp(-z * z);
  check_finite(e, "dawson");
  cplx v = 0.5 * kSqrtPi * kI * (e - w_upper(z));
  if (z.imag() == 0.0) v.imag(0.0);
  return v;
}

cplx erfi(cplx z) {
  if (std::abs(z) < 0.5) return erfi_taylor(z);
  if (z.imag() > 0.0) return -erfi(-z);
  // erfi(z) = -i + i exp(z^2) w(-z), with Im(-z) >= 0.
  cplx e = std::exp(z * z);
  check_finite(e, "erfi");
  cplx v = -kI + kI * e * w_upper(-z);
  check_finite(v, "erfi");
  if (z.imag() == 0.0) v.imag(0.0);
  return v;
}

cplx scaled_dawson(double x, double t) {
  if (t < 0.0) return std::conj(scaled_dawson(x, -t));
  cplx z = cplx(x, t) / std::numbers::sqrt2;
  if (std::abs(z) < 0.5) return std::exp(-0.5 * t * t) * dawson_taylor(z);
  cplx lead = std::exp(cplx(-0.5 * x * x, -x * t));
  return 0.5 * kSqrtPi * kI * (lead - std::exp(-0.5 * t * t) * w_upper(z));
}

double dawson_pair(double x, double t) { return scaled_dawson(x, t).real(); }

namespace {

// Hankel expansion of J_nu(x) for large x, any real order.
double bessel_j_asymptotic(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  double p = 0.0, q = 0.0, a = 1.0;
  for (int k = 0; k < 30; ++k) {
    if (k > 0) a *= (mu - (2.0 * k - 1) * (2.0 * k - 1)) / (k * 8.0 * x);
    double term = (k / 2) % 2 ? -a : a;
    if (k % 2) q += term; else p += term;
    if (std::abs(a) < 1e-17 * std::abs(p)) break;
  }
  double chi = x - (0.5 * nu + 0.25) * kPi;
  return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

constexpr double kBesselAsymptotic = 500.0;

}  // namespace

double reg_hyp0f1_bessel(double b, double z) {
  if (b <= 0.0) throw DomainError("reg_hyp0f1: b must be positive");
  if (z > 0.0) throw DomainError("reg_hyp0f1: z must be non-positive");
  if (z == 0.0) return 1.0 / std::tgamma(b);
  const double x = 2.0 * std::sqrt(-z);
  const double nu = b - 1.0;
  if (x > kBesselAsymptotic) return std::pow(2.0 / x, nu) * bessel_j_asymptotic(nu, x);
  const double l = b - 1.5;
  if (l >= 0.0 && std::floor(l) == l) {
    // Half-integer order through the spherical Bessel function.
    unsigned li = static_cast<unsigned>(l);
    return std::pow(2.0 / x, nu) * std::sqrt(2.0 * x / kPi) * std::sph_bessel(li, x);
  }
  if (nu >= 0.0) return std::pow(2.0 / x, nu) * std::cyl_bessel_j(nu, x);
  if (nu == -0.5) return std::cos(x) / kSqrtPi;
  // J_{-mu} = cos(mu pi) J_mu - sin(mu pi) Y_mu
  double mu = -nu;
  double j = std::cos(mu * kPi) * std::cyl_bessel_j(mu, x) -
             std::sin(mu * kPi) * std::cyl_neumann(mu, x);
  return std::pow(2.0 / x, nu) * j;
}

double reg_hyp0f1(double b, double z) {
  if (b <= 0.0) throw DomainError("reg_hyp0f1: b must be positive");
  if (z > 0.0) throw DomainError("reg_hyp0f1: z must be non-positive");
  if (z >= -4.0) return reg_hyp0f1_series<double>(b, z, std::tgamma(b));
  return reg_hyp0f1_bessel(b, z);
}

cplx bessel_k(double nu, cplx z) {
  if (!(z.real() > 0.0)) throw DomainError("bessel_k: requires Re z > 0");
  nu = std::abs(nu);
  double l = nu - 0.5;
  if (std::floor(l) == l) {
    // K_{l+1/2}(z) = sqrt(pi/2z) e^{-z} sum_k (l+k)!/(k!(l-k)!) (2z)^{-k}
    int li = static_cast<int>(l);
    cplx sum = 0.0, term = 1.0;
    for (int k = 0; k <= li; ++k) {
      if (k > 0) term *= double((li + k) * (li - k + 1)) / (double(k) * 2.0 * z);
      sum += term;
    }
    return std::sqrt(kPi / (2.0 * z)) * std::exp(-z) * sum;
  }
  int nl = static_cast<int>(nu + 0.5);
  double mu = nu - nl;
  cplx kmu, kmu1;
  if (std::abs(z) < 2.0)
    bessel_k_temme(mu, z, kmu, kmu1);
  else
    bessel_k_steed(mu, z, kmu, kmu1);
  for (int i = 1; i <= nl; ++i) {
    cplx next = (mu + i) * (2.0 / z) * kmu1 + kmu;
    kmu = kmu1;
    kmu1 = next;
  }
  return kmu;
}

}  // namespace harvest::specfun
