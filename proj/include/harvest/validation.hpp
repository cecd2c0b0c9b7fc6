#pragma once

#include <functional>
#include <string>
#include <vector>

#include "harvest/sweep.hpp"

namespace harvest::validation {

struct CheckResult {
  std::string id;
  bool pass = false;
  std::string detail;  // measured values against their bounds
};

struct Criterion {
  std::string id;
  std::string title;
  std::function<CheckResult()> run;
};

// Acceptance criteria, in a fixed order.
const std::vector<Criterion>& criteria();
const Criterion* find_criterion(const std::string& id);

// Reference layout sweep: Omega T = 7, L = 7T, t_AB/T in [-14, 14], 281 points.
// Memoized per process.
const std::vector<sweep::SweepRow>& reference_sweep(int n, double mass_mT = 0.0,
                                                    double lambda_ir = 0.0);

// One sub-check of the invariant suite, exposed for the unit tests.
struct SplitCheck {
  double mismatch = 0.0;
  double allowed = 0.0;
  bool pass = false;
};
SplitCheck split_consistency(const model::PairConfig& cfg, const me::EvalOptions& opts);

}  // namespace harvest::validation
