#include "harvest/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "harvest/entanglement.hpp"
#include "harvest/wightman.hpp"

namespace harvest::sweep {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("config: " + key + " expects a number, got '" + v + "'");
  }
}

int to_int(const std::string& key, const std::string& v) {
  double d = to_double(key, v);
  if (d != std::floor(d)) throw ConfigError("config: " + key + " expects an integer");
  return static_cast<int>(d);
}

}  // namespace

std::vector<double> SweepConfig::grid() const {
  std::vector<double> g(tab_steps);
  for (int i = 0; i < tab_steps; ++i)
    g[i] = tab_min_T + (tab_max_T - tab_min_T) * double(i) / double(tab_steps - 1);
  return g;
}

void SweepConfig::validate() const {
  pair.validate();
  if (tab_steps < 2) throw ConfigError("config: tab_steps must be >= 2");
  if (!(tab_min_T < tab_max_T)) throw ConfigError("config: tab_min_T must be < tab_max_T");
  if (!(opts.tol.rel > 0.0) || !(opts.tol.l1 >= 0.0))
    throw ConfigError("config: tolerances must be positive");
}

void apply_setting(SweepConfig& c, const std::string& key, const std::string& v) {
  auto& p = c.pair;
  if (key == "n") {
    p.field.n = to_int(key, v);
  } else if (key == "mass_mT") {
    p.field.mass_mT = to_double(key, v);
  } else if (key == "ir_cutoff_LambdaT") {
    p.field.ir_cutoff_LambdaT = to_double(key, v);
  } else if (key == "omega_T") {
    p.detector_a.gap_OmegaT = p.detector_b.gap_OmegaT = to_double(key, v);
  } else if (key == "L_over_T") {
    p.detector_a.position = 0.0;
    p.detector_b.position = to_double(key, v);
  } else if (key == "lambda_tilde") {
    p.coupling_lambda_tilde = to_double(key, v);
  } else if (key == "switching") {
    if (v == "gaussian")
      p.switching.kind = model::SwitchingSpec::Kind::gaussian;
    else if (v == "truncated")
      p.switching.kind = model::SwitchingSpec::Kind::truncated;
    else
      throw ConfigError("config: switching must be gaussian or truncated");
  } else if (key == "truncation_halfwidth_T") {
    p.switching.half_width_T = to_double(key, v);
  } else if (key == "smearing") {
    if (v == "pointlike")
      p.smearing.kind = model::SmearingSpec::Kind::pointlike;
    else if (v == "gaussian")
      p.smearing.kind = model::SmearingSpec::Kind::gaussian;
    else
      throw ConfigError("config: smearing must be pointlike or gaussian");
  } else if (key == "smearing_radius_T") {
    p.smearing.radius_T = to_double(key, v);
  } else if (key == "tab_min_T") {
    c.tab_min_T = to_double(key, v);
  } else if (key == "tab_max_T") {
    c.tab_max_T = to_double(key, v);
  } else if (key == "tab_steps") {
    c.tab_steps = to_int(key, v);
  } else if (key == "rel_tol") {
    c.opts.tol.rel = to_double(key, v);
  } else if (key == "abs_tol") {
    c.opts.tol.l1 = to_double(key, v);
  } else if (key == "out") {
    c.out = v;
  } else {
    throw ConfigError("config: unknown key '" + key + "'");
  }
}

void apply_override(SweepConfig& c, const std::string& assignment) {
  size_t eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + assignment + "'");
  apply_setting(c, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

SweepConfig parse_config(const std::string& text) {
  SweepConfig c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    apply_setting(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return c;
}

SweepConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

SweepRow run_point(const model::PairConfig& cfg, const me::EvalOptions& opts) {
  SweepRow row;
  row.t_ab_T = cfg.t_ab();
  row.causal_class = model::causal_class(cfg);
  me::MatrixElements m = me::compute_all(cfg, opts);
  // Checks the perturbative regime.
  (void)ent::assemble_rho(m);
  ent::EntanglementReport rep = ent::report(m, row.causal_class);
  row.l_jj = m.l_aa;
  row.abs_m = std::abs(m.m_total.value);
  row.abs_m_plus = std::abs(m.m_plus.value);
  row.abs_m_minus = std::abs(m.m_minus.value);
  row.n_total = rep.split.n_total;
  row.n_plus = rep.split.n_plus;
  row.n_minus = rep.split.n_minus;
  row.estimator_i = rep.estimator;
  row.i_flag = rep.i_flag;
  row.err_estimate = m.l_error + m.m_plus.error + m.m_minus.error;
  return row;
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg, unsigned threads) {
  cfg.validate();
  const std::vector<double> grid = cfg.grid();
  std::vector<SweepRow> rows(grid.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (size_t i = next++; i < grid.size(); i = next++) {
      model::PairConfig p = cfg.pair;
      p.detector_b.center_tT = p.detector_a.center_tT + grid[i];
      try {
        rows[i] = run_point(p, cfg.opts);
      } catch (const Error& e) {
        SweepRow r;
        r.t_ab_T = grid[i];
        r.causal_class = model::causal_class(p);
        r.error = e.code();
        r.error_message = e.what();
        rows[i] = r;
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(grid.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return rows;
}

const std::string& csv_header() {
  static const std::string h =
      "t_ab_T,l_jj,abs_m,abs_m_plus,abs_m_minus,n_total,n_plus,n_minus,estimator_i,i_flag,"
      "causal_class,err_estimate";
  return h;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_csv(const std::vector<SweepRow>& rows, std::ostream& os) {
  os << csv_header() << '\n';
  for (const auto& r : rows) {
    os << format_number(r.t_ab_T) << ',';
    if (r.error) {
      for (int i = 0; i < 8; ++i) os << "nan,";
      os << "0," << model::to_string(r.causal_class) << ",error:"
         << Error(*r.error, "").code_name() << '\n';
      continue;
    }
    for (double v : {r.l_jj, r.abs_m, r.abs_m_plus, r.abs_m_minus, r.n_total, r.n_plus,
                     r.n_minus, r.estimator_i})
      os << format_number(v) << ',';
    os << (r.i_flag ? 1 : 0) << ',' << model::to_string(r.causal_class) << ','
       << format_number(r.err_estimate) << '\n';
  }
}

std::vector<SweepRow> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || trim(line) != csv_header())
    throw ConfigError("csv: header does not match the sweep schema");
  std::vector<SweepRow> rows;
  while (std::getline(is, line)) {
    if (trim(line).empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 12) throw ConfigError("csv: expected 12 columns");
    SweepRow r;
    double* num[] = {&r.t_ab_T, &r.l_jj, &r.abs_m, &r.abs_m_plus, &r.abs_m_minus,
                     &r.n_total, &r.n_plus, &r.n_minus, &r.estimator_i};
    for (int i = 0; i < 9; ++i) *num[i] = std::strtod(f[i].c_str(), nullptr);
    r.i_flag = f[9] == "1";
    if (f[10] == "spacelike")
      r.causal_class = model::CausalClass::spacelike;
    else if (f[10] == "lightlike_band")
      r.causal_class = model::CausalClass::lightlike_band;
    else if (f[10] == "timelike")
      r.causal_class = model::CausalClass::timelike;
    else
      throw ConfigError("csv: unknown causal class '" + f[10] + "'");
    if (f[11].rfind("error:", 0) == 0) {
      std::string code = f[11].substr(6);
      r.error = code == "config" ? ErrorCode::config
                : code == "regime" ? ErrorCode::regime
                                   : ErrorCode::accuracy;
    } else {
      r.err_estimate = std::strtod(f[11].c_str(), nullptr);
    }
    rows.push_back(r);
  }
  return rows;
}

int count_peaks(const std::vector<Point>& s, double frac, double lo, double hi) {
  if (s.size() < 3) throw DomainError("count_peaks: need at least 3 samples");
  if (!(frac > 0.0 && frac < 1.0)) throw DomainError("count_peaks: prominence fraction in (0, 1)");
  double gmax = 0.0;
  for (const auto& p : s) gmax = std::max(gmax, p.y);
  const double need = frac * gmax;
  int count = 0;
  const size_t n = s.size();
  for (size_t i = 1; i + 1 < n; ++i) {
    if (!(s[i].y > s[i - 1].y && s[i].y > s[i + 1].y)) continue;
    if (s[i].x < lo || s[i].x > hi) continue;
    // Prominence: height above the higher of the two minima reached before
    // meeting a taller point (or the series end) on each side.
    double left_min = s[i].y, right_min = s[i].y;
    for (size_t j = i; j-- > 0;) {
      if (s[j].y > s[i].y) break;
      left_min = std::min(left_min, s[j].y);
    }
    for (size_t j = i + 1; j < n; ++j) {
      if (s[j].y > s[i].y) break;
      right_min = std::min(right_min, s[j].y);
    }
    if (s[i].y - std::max(left_min, right_min) >= need) ++count;
  }
  return count;
}

std::vector<CommutatorRow> commutator_table(const model::FieldSpec& field, double dx,
                                            double width, const std::vector<double>& dts) {
  field.validate();
  std::vector<CommutatorRow> out;
  const bool closed = field.mass_mT == 0.0 && (field.n <= 2 || field.n % 2 == 1);
  for (double dt : dts) {
    wightman::TestFunctionPair p{{dt, width}, {0.0, width}};
    wightman::cplx v;
    if (closed)
      v = wightman::smeared_commutator(field.n, p, dx);
    else
      v = wightman::commutator_numeric(field, {dt, dx}, p.sigma()).value * p.area();
    out.push_back({dt, v.real(), v.imag()});
  }
  return out;
}

}  // namespace harvest::sweep
