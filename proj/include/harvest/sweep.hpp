#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "harvest/errors.hpp"
#include "harvest/matrix_elements.hpp"
#include "harvest/model.hpp"

namespace harvest::sweep {

struct SweepConfig {
  model::PairConfig pair;
  double tab_min_T = -14.0;
  double tab_max_T = 14.0;
  int tab_steps = 281;
  me::EvalOptions opts;
  std::string out;

  std::vector<double> grid() const;
  void validate() const;
};

// Flat "key = value" text with '#' comments.
SweepConfig parse_config(const std::string& text);
SweepConfig load_config(const std::string& path);
void apply_setting(SweepConfig& cfg, const std::string& key, const std::string& value);
// "key=value" as given on the command line.
void apply_override(SweepConfig& cfg, const std::string& assignment);

struct SweepRow {
  double t_ab_T = 0.0;
  double l_jj = 0.0;
  double abs_m = 0.0;
  double abs_m_plus = 0.0;
  double abs_m_minus = 0.0;
  double n_total = 0.0;
  double n_plus = 0.0;
  double n_minus = 0.0;
  double estimator_i = 0.0;
  bool i_flag = false;
  model::CausalClass causal_class = model::CausalClass::spacelike;
  double err_estimate = 0.0;
  std::optional<ErrorCode> error;  // set when the point failed
  std::string error_message;
};

SweepRow run_point(const model::PairConfig& cfg, const me::EvalOptions& opts = {});

// Rows in grid order. Points are distributed over a worker pool; threads = 0
// picks the hardware concurrency.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg, unsigned threads = 0);

const std::string& csv_header();
std::string format_number(double v);
void write_csv(const std::vector<SweepRow>& rows, std::ostream& os);
std::vector<SweepRow> read_csv(std::istream& is);

struct Point {
  double x;
  double y;
};

// Strict local maxima with prominence >= frac * global max whose x lies in
// [lo, hi]. Prominence is measured on the whole series.
int count_peaks(const std::vector<Point>& series, double prominence_frac, double lo, double hi);

// Smeared commutator table for the commutator subcommand: Gaussian test
// functions of the given width, second one centred at 0, first at dt.
struct CommutatorRow {
  double dt_T;
  double re;
  double im;
};
std::vector<CommutatorRow> commutator_table(const model::FieldSpec& field, double dx_T,
                                            double width_T, const std::vector<double>& dts);

}  // namespace harvest::sweep
