#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "harvest/errors.hpp"
#include "harvest/sweep.hpp"

using namespace harvest;
using namespace harvest::sweep;

namespace {

std::string csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  write_csv(rows, os);
  return os.str();
}

SweepConfig small(int n, double lo, double hi, int steps) {
  SweepConfig c;
  c.pair.field.n = n;
  c.tab_min_T = lo;
  c.tab_max_T = hi;
  c.tab_steps = steps;
  return c;
}

}  // namespace

TEST_CASE("config parsing") {
  SweepConfig c = parse_config(R"(
# reference layout
n = 1
mass_mT = 0
ir_cutoff_LambdaT = 0.02   # hard cutoff
omega_T = 5
L_over_T = 9
lambda_tilde = 0.5
switching = truncated
truncation_halfwidth_T = 2.5
smearing = gaussian
smearing_radius_T = 0.3
tab_min_T = -3
tab_max_T = 4
tab_steps = 8
rel_tol = 1e-7
abs_tol = 1e-11
out = rows.csv
)");
  CHECK(c.pair.field.n == 1);
  CHECK(c.pair.field.ir_cutoff_LambdaT.value() == 0.02);
  CHECK(c.pair.detector_a.gap_OmegaT == 5);
  CHECK(c.pair.detector_b.gap_OmegaT == 5);
  CHECK(c.pair.L() == 9);
  CHECK(c.pair.coupling_lambda_tilde == 0.5);
  CHECK(c.pair.switching.is_truncated());
  CHECK(c.pair.switching.half_width_T == 2.5);
  CHECK(c.pair.smearing.kind == model::SmearingSpec::Kind::gaussian);
  CHECK(c.pair.smearing.radius_T == 0.3);
  CHECK(c.tab_steps == 8);
  CHECK(c.opts.tol.rel == 1e-7);
  CHECK(c.opts.tol.l1 == 1e-11);
  CHECK(c.out == "rows.csv");
  CHECK_NOTHROW(c.validate());

  auto g = c.grid();
  REQUIRE(g.size() == 8);
  CHECK(g.front() == -3.0);
  CHECK(g.back() == 4.0);
  CHECK(g[1] == 1.0 - 3.0);
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse_config("colour = blue"), ConfigError);
  CHECK_THROWS_AS(parse_config("n 3"), ConfigError);
  CHECK_THROWS_AS(parse_config("n = three"), ConfigError);
  CHECK_THROWS_AS(parse_config("n = 2.5"), ConfigError);
  CHECK_THROWS_AS(parse_config("switching = boxcar"), ConfigError);
  CHECK_THROWS_AS(parse_config("smearing = lorentzian"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.txt"), ConfigError);

  SweepConfig c;
  CHECK_THROWS_AS(apply_override(c, "n3"), ConfigError);
  apply_override(c, " n = 4 ");
  CHECK(c.pair.field.n == 4);

  c = parse_config("tab_steps = 1");
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = parse_config("tab_min_T = 2\ntab_max_T = 1");
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = parse_config("n = 1");
  CHECK_THROWS_AS(c.validate(), ConfigError);  // missing IR cutoff
}

TEST_CASE("config file on disk") {
  const char* path = "test_sweep_config.txt";
  {
    std::ofstream f(path);
    f << "n = 2\nomega_T = 3\n";
  }
  SweepConfig c = load_config(path);
  CHECK(c.pair.field.n == 2);
  CHECK(c.pair.omega() == 3);
  std::remove(path);
}

TEST_CASE("run_point examples") {
  auto p = model::PairConfig::reference(3, 7, 7, 0);
  SweepRow r = run_point(p);
  CHECK(r.causal_class == model::CausalClass::spacelike);
  CHECK(r.n_minus == 0.0);
  CHECK(r.abs_m_minus < 1e-6 * r.abs_m_plus);

  p = model::PairConfig::reference(3, 7, 7, 7);
  r = run_point(p);
  CHECK(r.estimator_i > 0.95);
  CHECK(r.causal_class == model::CausalClass::lightlike_band);
  CHECK(r.err_estimate >= 0);

  p.coupling_lambda_tilde = 0;
  r = run_point(p);
  for (double v : {r.l_jj, r.abs_m, r.abs_m_plus, r.abs_m_minus, r.n_total, r.n_plus, r.n_minus,
                   r.estimator_i})
    CHECK(v == 0.0);

  p = model::PairConfig::reference(3, 0.1, 7, 0);
  p.coupling_lambda_tilde = 100;
  CHECK_THROWS_AS(run_point(p), RegimeError);
}

TEST_CASE("three-point sweep") {
  auto rows = run_sweep(small(3, -1, 1, 3), 2);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].t_ab_T == -1.0);
  CHECK(rows[1].t_ab_T == 0.0);
  CHECK(rows[2].t_ab_T == 1.0);
  for (const auto& r : rows) CHECK_FALSE(r.error);
  // same values as the single-point route
  SweepRow direct = run_point(model::PairConfig::reference(3, 7, 7, 1.0));
  CHECK(rows[2].abs_m == direct.abs_m);
}

TEST_CASE("failed points are recorded in the row and the sweep continues") {
  SweepConfig c = small(3, -1, 1, 3);
  apply_override(c, "omega_T = 0.1");
  apply_override(c, "lambda_tilde = 100");
  auto rows = run_sweep(c, 1);
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) {
    REQUIRE(r.error);
    CHECK(*r.error == ErrorCode::regime);
  }
  std::string text = csv(rows);
  CHECK(text.find("error:regime") != std::string::npos);
  std::istringstream in(text);
  auto back = read_csv(in);
  REQUIRE(back.size() == 3);
  CHECK(back[1].error == ErrorCode::regime);
  CHECK(std::isnan(back[1].abs_m));
}

TEST_CASE("CSV header and round trip") {
  CHECK(csv_header() ==
        "t_ab_T,l_jj,abs_m,abs_m_plus,abs_m_minus,n_total,n_plus,n_minus,estimator_i,i_flag,"
        "causal_class,err_estimate");
  auto rows = run_sweep(small(3, 5, 9, 9), 0);
  std::string text = csv(rows);
  CHECK(text.rfind(csv_header() + "\n", 0) == 0);
  std::istringstream in(text);
  auto back = read_csv(in);
  REQUIRE(back.size() == rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    // every float survives at 12 significant digits
    CHECK(format_number(back[i].abs_m) == format_number(rows[i].abs_m));
    CHECK(format_number(back[i].l_jj) == format_number(rows[i].l_jj));
    CHECK(format_number(back[i].estimator_i) == format_number(rows[i].estimator_i));
    CHECK(back[i].causal_class == rows[i].causal_class);
    CHECK(back[i].i_flag == rows[i].i_flag);
  }
  // a second write of the parsed rows is byte-identical
  CHECK(csv(back) == text);

  std::istringstream bad("t_ab_T,l_jj\n1,2\n");
  CHECK_THROWS_AS(read_csv(bad), ConfigError);
}

TEST_CASE("number format") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(-7.0) == "-7");
  CHECK(format_number(1.23456789012345e-20) == "1.23456789012e-20");
}

TEST_CASE("sweeps are deterministic and thread-count independent") {
  SweepConfig c = small(5, -9, 9, 13);
  std::string serial = csv(run_sweep(c, 1));
  std::string threaded = csv(run_sweep(c, 4));
  std::string again = csv(run_sweep(c, 4));
  CHECK(serial == threaded);
  CHECK(threaded == again);
}

TEST_CASE("peak counting") {
  auto bumps = [](std::vector<double> centres) {
    std::vector<Point> s;
    for (double x = -10; x <= 10; x += 0.05) {
      double y = 0;
      for (double c : centres) y += std::exp(-(x - c) * (x - c));
      s.push_back({x, y});
    }
    return s;
  };
  CHECK(count_peaks(bumps({0}), 0.05, -10, 10) == 1);
  CHECK(count_peaks(bumps({-4, 4}), 0.05, -10, 10) == 2);
  CHECK(count_peaks(bumps({-4, 4}), 0.05, 0, 10) == 1);
  // a shoulder below the prominence threshold does not count
  std::vector<Point> s = bumps({0});
  for (auto& p : s) p.y += 0.01 * std::exp(-(p.x - 5) * (p.x - 5) * 20);
  CHECK(count_peaks(s, 0.05, -10, 10) == 1);
  CHECK(count_peaks(s, 0.001, -10, 10) == 2);

  CHECK_THROWS_AS(count_peaks({{0, 1}, {1, 2}}, 0.05, 0, 1), DomainError);
  CHECK_THROWS_AS(count_peaks(bumps({0}), 1.5, 0, 1), DomainError);
}

TEST_CASE("commutator table") {
  model::FieldSpec f;
  f.n = 3;
  auto rows = commutator_table(f, 5.0, 0.25, {-5.0, 0.0, 5.0, 10.0});
  REQUIRE(rows.size() == 4);
  CHECK(std::abs(rows[1].im) < 1e-12 * std::abs(rows[2].im));
  CHECK(std::abs(rows[3].im) < 1e-12 * std::abs(rows[2].im));
  CHECK(rows[0].im == doctest::Approx(-rows[2].im));
  CHECK(std::abs(rows[2].re) < 1e-12 * std::abs(rows[2].im));
}
