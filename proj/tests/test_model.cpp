#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "harvest/errors.hpp"
#include "harvest/model.hpp"

using namespace harvest;
using namespace harvest::model;

TEST_CASE("strong support") {
  auto g = SwitchingSpec::gaussian();
  StrongSupport s = strong_support({7, 0, 0}, g);
  CHECK(s.lo_T == -3.5);
  CHECK(s.hi_T == 3.5);
  s = strong_support({7, 7, 0}, SwitchingSpec::truncated(3));
  CHECK(s.lo_T == 4.0);
  CHECK(s.hi_T == 10.0);
  s = strong_support({7, -2, 0}, g);
  CHECK(s.lo_T == -5.5);
  CHECK(s.hi_T == 1.5);
}

TEST_CASE("strong support width matches the switching variant") {
  for (double t : {-9.0, 0.0, 3.25})
    for (double w : {0.5, 3.0, 4.0}) {
      StrongSupport s = strong_support({1, t, 0}, SwitchingSpec::truncated(w));
      CHECK(s.hi_T - s.lo_T == doctest::Approx(2 * w));
      s = strong_support({1, t, 0}, SwitchingSpec::gaussian());
      CHECK(s.hi_T - s.lo_T == doctest::Approx(7.0));
    }
}

TEST_CASE("causal class examples") {
  CHECK(causal_class(PairConfig::reference(3, 7, 7, 0)) == CausalClass::spacelike);
  CHECK(causal_class(PairConfig::reference(3, 7, 7, 7)) == CausalClass::lightlike_band);
  CHECK(causal_class(PairConfig::reference(3, 7, 7, 20)) == CausalClass::timelike);
  CHECK(to_string(CausalClass::lightlike_band) == "lightlike_band");
}

TEST_CASE("causal class is symmetric in t_AB") {
  for (double L : {1.0, 7.0, 12.0})
    for (double t = 0; t <= 25; t += 0.25) {
      auto plus = causal_class(PairConfig::reference(3, 7, L, t));
      auto minus = causal_class(PairConfig::reference(3, 7, L, -t));
      CHECK(plus == minus);
    }
}

TEST_CASE("causal class with truncated switching") {
  auto c = PairConfig::reference(3, 4, 7, 0);
  c.switching = SwitchingSpec::truncated(3);
  CHECK(causal_class(c) == CausalClass::spacelike);
  CHECK(strictly_spacelike_compact(c));
  c.detector_b.center_tT = 1.0;  // 6 + 1 = L: touches the light cone
  CHECK(causal_class(c) == CausalClass::spacelike);
  CHECK_FALSE(strictly_spacelike_compact(c));
  c.detector_b.center_tT = 14.0;
  CHECK(causal_class(c) == CausalClass::timelike);
  CHECK_FALSE(strictly_spacelike_compact(PairConfig::reference(3, 4, 7, 0)));
}

TEST_CASE("derived quantities") {
  PairConfig c = PairConfig::reference(2, 5, 7, -3);
  CHECK(c.L() == 7.0);
  CHECK(c.t_ab() == -3.0);
  CHECK(c.omega() == 5.0);
  c.detector_a.position = 9.0;
  CHECK(c.L() == 2.0);
}

TEST_CASE("validation") {
  PairConfig c = PairConfig::reference(3, 7, 7, 0);
  CHECK_NOTHROW(c.validate());

  PairConfig bad = c;
  bad.field.n = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  bad = c;
  bad.field.mass_mT = -1;
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  bad = c;
  bad.field.n = 1;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad.field.ir_cutoff_LambdaT = 0.02;
  CHECK_NOTHROW(bad.validate());
  CHECK(bad.field.k_lower() == 0.02);
  bad.field.mass_mT = 1.0;  // a massive field does not need the cutoff
  CHECK_FALSE(bad.field.needs_ir_cutoff());
  CHECK(bad.field.k_lower() == 0.0);
  bad.field.ir_cutoff_LambdaT = -1.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  bad = c;
  bad.detector_b.gap_OmegaT = 6;
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  bad = c;
  bad.detector_b.center_tT = NAN;
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  bad = c;
  bad.switching = SwitchingSpec::truncated(0);
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  bad = c;
  bad.smearing = SmearingSpec::gaussian(0);
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}
