#include "harvest/model.hpp"

#include <cmath>

#include "harvest/errors.hpp"

namespace harvest::model {

void FieldSpec::validate() const {
  if (n < 1) throw ConfigError("field: n must be >= 1");
  if (!(mass_mT >= 0.0) || !std::isfinite(mass_mT)) throw ConfigError("field: mass_mT must be >= 0");
  if (ir_cutoff_LambdaT && !(*ir_cutoff_LambdaT > 0.0))
    throw ConfigError("field: ir_cutoff_LambdaT must be positive");
  if (needs_ir_cutoff() && !ir_cutoff_LambdaT)
    throw ConfigError("field: n = 1 massless needs ir_cutoff_LambdaT");
}

double PairConfig::L() const { return std::abs(detector_b.position - detector_a.position); }

void PairConfig::validate() const {
  field.validate();
  if (detector_a.gap_OmegaT != detector_b.gap_OmegaT)
    throw ConfigError("detectors must share the gap");
  for (double v : {detector_a.gap_OmegaT, detector_a.center_tT, detector_a.position,
                   detector_b.center_tT, detector_b.position})
    if (!std::isfinite(v)) throw ConfigError("detector parameters must be finite");
  if (!(coupling_lambda_tilde >= 0.0)) throw ConfigError("lambda_tilde must be >= 0");
  if (switching.is_truncated() && !(switching.half_width_T > 0.0))
    throw ConfigError("truncation_halfwidth_T must be positive");
  if (smearing.kind == SmearingSpec::Kind::gaussian && !(smearing.radius_T > 0.0))
    throw ConfigError("smearing_radius_T must be positive");
}

PairConfig PairConfig::reference(int n, double omega, double L, double t_ab) {
  PairConfig c;
  c.field.n = n;
  c.detector_a = {omega, 0.0, 0.0};
  c.detector_b = {omega, t_ab, L};
  return c;
}

StrongSupport strong_support(const DetectorSpec& d, const SwitchingSpec& s) {
  double w = s.is_truncated() ? s.half_width_T : 3.5;
  return {d.center_tT - w, d.center_tT + w};
}

CausalClass causal_class(const PairConfig& cfg) {
  StrongSupport a = strong_support(cfg.detector_a, cfg.switching);
  StrongSupport b = strong_support(cfg.detector_b, cfg.switching);
  const double L = cfg.L();
  // Largest and smallest time separation between the two supports.
  double far = std::max(std::abs(b.hi_T - a.lo_T), std::abs(b.lo_T - a.hi_T));
  double near = 0.0;
  if (b.lo_T > a.hi_T)
    near = b.lo_T - a.hi_T;
  else if (a.lo_T > b.hi_T)
    near = a.lo_T - b.hi_T;
  if (far <= L) return CausalClass::spacelike;
  if (near >= L) return CausalClass::timelike;
  return CausalClass::lightlike_band;
}

bool strictly_spacelike_compact(const PairConfig& cfg) {
  if (!cfg.switching.is_truncated()) return false;
  StrongSupport a = strong_support(cfg.detector_a, cfg.switching);
  StrongSupport b = strong_support(cfg.detector_b, cfg.switching);
  double far = std::max(std::abs(b.hi_T - a.lo_T), std::abs(b.lo_T - a.hi_T));
  return far < cfg.L();
}

std::string to_string(CausalClass c) {
  switch (c) {
    case CausalClass::spacelike: return "spacelike";
    case CausalClass::lightlike_band: return "lightlike_band";
    case CausalClass::timelike: return "timelike";
  }
  return "unknown";
}

}  // namespace harvest::model
