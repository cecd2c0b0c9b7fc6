#pragma once

#include <optional>
#include <string>

namespace harvest::model {

// All quantities are in units of the Gaussian switching width T.
struct FieldSpec {
  int n = 3;           // spatial dimensions
  double mass_mT = 0;  // m T
  std::optional<double> ir_cutoff_LambdaT;

  bool needs_ir_cutoff() const { return n == 1 && mass_mT == 0.0; }
  // Lower limit of the state-dependent radial integrals.
  double k_lower() const { return needs_ir_cutoff() ? *ir_cutoff_LambdaT : 0.0; }
  void validate() const;
};

struct DetectorSpec {
  double gap_OmegaT = 7.0;
  double center_tT = 0.0;
  double position = 0.0;  // offset along the separation axis, units of T
};

struct SwitchingSpec {
  enum class Kind { gaussian, truncated };
  Kind kind = Kind::gaussian;
  double half_width_T = 3.0;  // only for truncated

  static SwitchingSpec gaussian() { return {}; }
  static SwitchingSpec truncated(double w = 3.0) { return {Kind::truncated, w}; }
  bool is_truncated() const { return kind == Kind::truncated; }
};

struct SmearingSpec {
  enum class Kind { pointlike, gaussian };
  Kind kind = Kind::pointlike;
  double radius_T = 0.0;

  static SmearingSpec pointlike() { return {}; }
  static SmearingSpec gaussian(double r) { return {Kind::gaussian, r}; }
};

struct PairConfig {
  FieldSpec field;
  DetectorSpec detector_a;
  DetectorSpec detector_b{7.0, 0.0, 7.0};
  double coupling_lambda_tilde = 1.0;
  SwitchingSpec switching;
  SmearingSpec smearing;

  double omega() const { return detector_a.gap_OmegaT; }
  double L() const;
  double t_ab() const { return detector_b.center_tT - detector_a.center_tT; }
  void validate() const;

  // Reference layout: A at the origin, B at distance L, delay t_AB.
  static PairConfig reference(int n, double omega, double L, double t_ab);
};

struct StrongSupport {
  double lo_T;
  double hi_T;
};

StrongSupport strong_support(const DetectorSpec& d, const SwitchingSpec& s);

enum class CausalClass { spacelike, lightlike_band, timelike };

CausalClass causal_class(const PairConfig& cfg);
std::string to_string(CausalClass c);

// Compact supports strictly out of light contact (truncated switching only).
bool strictly_spacelike_compact(const PairConfig& cfg);

}  // namespace harvest::model
