#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "harvest/errors.hpp"
#include "harvest/quadrature.hpp"
#include "harvest/wightman.hpp"

using namespace harvest;
using namespace harvest::wightman;
using std::numbers::pi;
const cplx I(0, 1);

namespace {

FieldSpec field(int n, double m = 0.0) {
  FieldSpec f;
  f.n = n;
  f.mass_mT = m;
  if (n == 1 && m == 0.0) f.ir_cutoff_LambdaT = 0.02;
  return f;
}

// Closed-form W convolved in dt with exp(-s^2/w^2)/(sqrt(pi) w), spacelike only.
cplx convolved_closed(const FieldSpec& fs, double dt, double dx, double w) {
  auto g = [&](double s) {
    return std::exp(-s * s / (w * w)) / (std::sqrt(pi) * w) *
           wightman_closed(fs, {dt + s, dx}, 1e-14);
  };
  return quad::integrate_adaptive(g, -9 * w, 9 * w, {1e-12, 0, 1e-15}).value;
}

}  // namespace

TEST_CASE("massless n = 3 closed form") {
  for (double dt : {-3.0, 0.0, 1.5, 6.9})
    for (double dx : {0.5, 7.0})
      for (double eps : {0.3, 0.01}) {
        cplx d(dt, -eps);
        cplx expect = -1.0 / (4 * pi * pi) / (d * d - dx * dx);
        cplx w = wightman_closed(field(3), {dt, dx}, eps);
        CHECK(std::abs(w - expect) <= 1e-13 * std::abs(expect));
      }
}

TEST_CASE("wightman input errors") {
  CHECK_THROWS_AS(wightman_closed(field(3), {0, 1}, 0.0), DomainError);
  CHECK_THROWS_AS(wightman_closed(field(3), {0, -1}, 0.1), DomainError);
  FieldSpec bare;
  bare.n = 1;
  CHECK_THROWS_AS(wightman_closed(bare, {0, 1}, 0.1), ConfigError);
}

TEST_CASE("small mass reproduces the massless value") {
  for (double dt : {0.0, 1.0, -2.0}) {
    SpacetimeInterval iv{dt, 3.0};
    cplx m0 = wightman_closed(field(3), iv, 1e-3);
    cplx m1 = wightman_closed(field(3, 1e-3), iv, 1e-3);
    CHECK(std::abs(m1 - m0) <= 1e-4 * std::abs(m0));
  }
}

TEST_CASE("spacelike: imaginary part vanishes and real part is even") {
  for (int n : {1, 2, 3, 4, 5})
    for (double m : {0.0, 1.0}) {
      cplx a = wightman_closed(field(n, m), {1.7, 4.0}, 1e-12);
      cplx b = wightman_closed(field(n, m), {-1.7, 4.0}, 1e-12);
      CHECK(std::abs(a.imag()) <= 1e-9 * std::abs(a));
      CHECK(a.real() == doctest::Approx(b.real()).epsilon(1e-10));
    }
}

TEST_CASE("momentum route against the closed form at spacelike separation") {
  // C^+ smoothed in dt equals twice the smoothed closed-form W; C^- vanishes.
  const double w = 0.3;
  for (int n : {1, 2, 3, 4})
    for (double m : {0.0, 0.5}) {
      if (n == 1 && m == 0.0) continue;  // momentum route carries the hard cutoff
      FieldSpec fs = field(n, m);
      for (double dt : {0.0, 1.2}) {
        cplx ref = 2.0 * convolved_closed(fs, dt, 5.0, w);
        quad::Result plus = anticommutator_numeric(fs, {dt, 5.0}, w, {1e-11, 0, 1e-14});
        quad::Result minus = commutator_numeric(fs, {dt, 5.0}, w, {1e-11, 0, 1e-14});
        INFO("n=" << n << " m=" << m << " dt=" << dt);
        CHECK(std::abs(plus.value - ref) <= 1e-7 * std::abs(ref));
        CHECK(std::abs(minus.value) <= 1e-8 * std::abs(ref));
      }
    }
}

TEST_CASE("commutator closed forms, n = 1 and 2") {
  auto c1 = commutator_closed(1, {2.0, 1.0});
  CHECK(std::abs(c1.value_at(2.0) - (-0.5 * I)) < 1e-15);
  CHECK(std::abs(c1.value_at(-2.0) - (0.5 * I)) < 1e-15);
  CHECK(std::abs(c1.value_at(0.5)) == 0.0);

  auto c2 = commutator_closed(2, {8.0, 5.0});
  CHECK(std::abs(c2.value_at(3.0)) == 0.0);
  cplx expect = -I / (2 * pi * std::sqrt(39.0));
  CHECK(std::abs(c2.value_at(8.0) - expect) < 1e-15);
  CHECK(std::abs(c2.value_at(-8.0) + expect) < 1e-15);
  CHECK_THROWS_AS(c2.value_at(5.0), DomainError);

  CHECK_THROWS_AS(commutator_closed(3, {0, 1}).value_at(1.0), DomainError);
  CHECK_THROWS_AS(commutator_closed(4, {0, 1}), DomainError);
  CHECK_THROWS_AS(commutator_closed(3, {0, 0}), DomainError);
}

TEST_CASE("pointwise commutator is 2i Im W in the timelike region") {
  for (int n : {1, 2})
    for (double dt : {2.0, -2.0, 9.0}) {
      SpacetimeInterval iv{dt, 1.0};
      cplx w = wightman_closed(field(n), iv, 1e-12);
      cplx c = commutator_closed(n, iv).value_at(dt);
      CHECK(std::abs(2.0 * I * w.imag() - c) <= 1e-9 * std::abs(c));
    }
}

TEST_CASE("odd-dimension coefficients") {
  auto a3 = odd_dimension_coefficients(3);
  REQUIRE(a3.size() == 1);
  CHECK(a3[0] == doctest::Approx(1 / (4 * pi)));

  // C_5 = -(1/(2 pi r)) d/dr C_3 by hand
  auto a5 = odd_dimension_coefficients(5);
  REQUIRE(a5.size() == 2);
  CHECK(a5[0] == doctest::Approx(1 / (8 * pi * pi)).epsilon(1e-14));
  CHECK(a5[1] == doctest::Approx(-1 / (8 * pi * pi)).epsilon(1e-14));

  auto a7 = odd_dimension_coefficients(7);
  REQUIRE(a7.size() == 3);
  const double p3 = 16 * pi * pi * pi;
  CHECK(a7[0] == doctest::Approx(3 / p3).epsilon(1e-14));
  CHECK(a7[1] == doctest::Approx(-3 / p3).epsilon(1e-14));
  CHECK(a7[2] == doctest::Approx(1 / p3).epsilon(1e-14));
  CHECK_THROWS_AS(odd_dimension_coefficients(4), DomainError);
}

TEST_CASE("n = 5 descriptor") {
  const double dx = 2.0;
  auto d = commutator_closed(5, {0.0, dx});
  REQUIRE(d.kind == CommutatorDescriptor::Kind::null_deltas);
  for (const auto& t : d.terms)
    if (t.branch == +1) {
      cplx expect = t.order == 0 ? I / (8 * pi * pi * dx * dx * dx) : -I / (8 * pi * pi * dx * dx);
      CHECK(std::abs(t.coefficient - expect) < 1e-15);
    }
}

TEST_CASE("highest delta order is (n-3)/2") {
  for (int n = 3; n <= 13; n += 2) CHECK(commutator_closed(n, {0, 1}).highest_order() == (n - 3) / 2);
}

TEST_CASE("test function pair") {
  TestFunctionPair p{{1.0, 0.3}, {-0.5, 0.4}};
  CHECK(p.area() == doctest::Approx(pi * 0.12));
  CHECK(p.sigma() == doctest::Approx(0.5));
  CHECK(p.offset() == doctest::Approx(1.5));
  // rho integrates to the area
  auto r = quad::integrate_adaptive([&](double s) { return cplx(p.density(s)); }, -10, 10,
                                    {1e-13, 0, 0});
  CHECK(r.value.real() == doctest::Approx(p.area()).epsilon(1e-12));
  // derivative against a central difference
  for (int j = 1; j <= 3; ++j) {
    double h = 1e-4, s = 1.2;
    double fd = (p.density(s + h, j - 1) - p.density(s - h, j - 1)) / (2 * h);
    CHECK(p.density(s, j) == doctest::Approx(fd).epsilon(1e-6));
  }
  TestFunctionPair bad{{0, 0}, {0, 1}};
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("smeared commutator examples") {
  // n = 1, deep timelike: -i/2 times the area
  TestFunctionPair deep{{20.0, 0.5}, {0.0, 0.7}};
  CHECK(std::abs(smeared_commutator(1, deep, 3.0) - (-0.5 * I * deep.area())) < 1e-14);

  // odd n, supports away from the null lines
  for (int n : {3, 5, 7}) {
    TestFunctionPair inside{{12.0, 0.25}, {0.0, 0.25}};
    TestFunctionPair peak{{5.0, 0.25}, {0.0, 0.25}};
    double ref = std::abs(smeared_commutator(n, peak, 5.0));
    CHECK(ref > 0);
    CHECK(std::abs(smeared_commutator(n, inside, 5.0)) < 1e-12 * ref);
  }
}

TEST_CASE("smeared commutator is antisymmetric") {
  for (int n : {1, 2, 3, 5, 7})
    for (double c : {0.0, 4.6, 5.2, 9.0}) {
      TestFunctionPair p{{c, 0.3}, {0.0, 0.45}};
      TestFunctionPair q{p.second, p.first};
      cplx a = smeared_commutator(n, p, 5.0);
      cplx b = smeared_commutator(n, q, 5.0);
      CHECK(std::abs(a + b) <= 1e-10 * std::max(std::abs(a), 1e-300) + 1e-300);
    }
}

TEST_CASE("smeared commutator against the sine transform") {
  for (int n : {1, 2, 3, 5, 7})
    for (double c : {4.7, 5.0, 5.3, -5.1, 9.0}) {
      TestFunctionPair p{{c, 0.25}, {0.0, 0.25}};
      cplx closed = smeared_commutator(n, p, 5.0);
      quad::Result r = commutator_numeric(field(n), {c, 5.0}, p.sigma(), {1e-11, 0, 1e-14});
      cplx numeric = r.value * p.area();
      TestFunctionPair on{{5.0, 0.25}, {0.0, 0.25}};
      double scale = std::abs(smeared_commutator(n, on, 5.0));
      INFO("n=" << n << " c=" << c << " closed=" << closed << " numeric=" << numeric);
      CHECK(std::abs(closed - numeric) <= 1e-6 * scale);
    }
}

TEST_CASE("n = 3 straddling pair against the smeared Wightman function") {
  for (double c : {6.9, 7.0, 7.2}) {
    TestFunctionPair p{{c, 0.5}, {0.0, 0.6}};
    cplx comm = smeared_commutator(3, p, 7.0);
    quad::Result w = smeared_wightman(field(3), p, 7.0, {0.08, 0.04, 0.02, 0.01, 0.005});
    cplx from_w = 2.0 * I * w.value.imag();
    CHECK(std::abs(comm - from_w) <= 1e-5 * std::abs(comm));

    // 2 W = C^+ + C^-, the anti-commutator from the cosine transform
    quad::Result plus = anticommutator_numeric(field(3), {c, 7.0}, p.sigma(), {1e-11, 0, 1e-14});
    cplx sum = plus.value * p.area() + comm;
    CHECK(std::abs(2.0 * w.value - sum) <= 1e-5 * std::abs(2.0 * w.value));
  }
}

TEST_CASE("sine transform: n = 2 timelike and n = 3 spacelike") {
  quad::Result r = commutator_numeric(field(2), {8.0, 5.0}, 0.02, {1e-11, 0, 1e-14});
  cplx closed = commutator_closed(2, {8.0, 5.0}).value_at(8.0);
  CHECK(std::abs(r.value - closed) <= 1e-4 * std::abs(closed));

  double peak = std::abs(commutator_numeric(field(3), {5.0, 5.0}, 0.25).value);
  double off = std::abs(commutator_numeric(field(3), {2.0, 5.0}, 0.25).value);
  CHECK(off <= 1e-6 * peak);
}

TEST_CASE("sine transform is independent of the IR cutoff") {
  FieldSpec a = field(1), b = field(1);
  a.ir_cutoff_LambdaT = 0.02;
  b.ir_cutoff_LambdaT = 0.001;
  for (double dt : {0.5, 3.0, 8.0}) {
    cplx va = commutator_numeric(a, {dt, 3.0}, 0.3).value;
    cplx vb = commutator_numeric(b, {dt, 3.0}, 0.3).value;
    CHECK(std::abs(va - vb) <= 1e-6 * std::max(std::abs(va), 1e-12));
  }
  // and matches the step function deep inside
  cplx deep = commutator_numeric(a, {8.0, 3.0}, 0.3).value;
  CHECK(std::abs(deep - (-0.5 * I)) < 1e-6);
}

TEST_CASE("massive commutator has interior support") {
  const double tol = 1e-6;
  HuygensReport massless = huygens_check(3, Region::interior, tol);
  double bound = tol * massless.peak;
  for (double dt : {7.0, 8.0, 10.0, 15.0}) {
    TestFunctionPair p{{dt, 0.25}, {0.0, 0.25}};
    quad::Result r = commutator_numeric(field(3, 1.0), {dt, 5.0}, p.sigma());
    CHECK(std::abs(r.value) * p.area() >= 1e3 * bound);
  }
}

TEST_CASE("strong Huygens table") {
  const double tol = 1e-6;
  CHECK(huygens_check(3, Region::interior, tol).silent);
  CHECK(huygens_check(5, Region::interior, tol).silent);
  CHECK(huygens_check(7, Region::interior, tol).silent);
  CHECK_FALSE(huygens_check(1, Region::interior, tol).silent);
  CHECK_FALSE(huygens_check(2, Region::interior, tol).silent);
  CHECK_FALSE(huygens_check(4, Region::interior, tol).silent);
  for (int n : {1, 2, 3, 4, 5}) CHECK(huygens_check(n, Region::exterior, tol).silent);
  CHECK(huygens_check(3, Region::interior, tol).peak > 0);
}
