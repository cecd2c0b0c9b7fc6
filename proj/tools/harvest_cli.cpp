// Command line front end: point, sweep, commutator, validate.

#include <fstream>
#include <iostream>
#include <memory>

#include "CLI11.hpp"
#include "harvest/errors.hpp"
#include "harvest/sweep.hpp"
#include "harvest/validation.hpp"

using namespace harvest;

namespace {

struct Common {
  std::string config;
  std::vector<std::string> sets;
  std::string out;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--config", c.config, "key = value configuration file");
  app->add_option("--set", c.sets, "override a configuration key (key=value)");
  app->add_option("--out", c.out, "output path (default: config 'out' or stdout)");
}

sweep::SweepConfig load(const Common& c) {
  sweep::SweepConfig cfg = c.config.empty() ? sweep::SweepConfig{} : sweep::load_config(c.config);
  for (const auto& s : c.sets) sweep::apply_override(cfg, s);
  if (!c.out.empty()) cfg.out = c.out;
  return cfg;
}

// Writes to the configured path, or stdout when none is set.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw ConfigError("cannot open output '" + path + "'");
    }
  }
  std::ostream& os() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

int first_error(const std::vector<sweep::SweepRow>& rows) {
  for (const auto& r : rows)
    if (r.error) {
      std::cerr << "error: t_ab_T=" << r.t_ab_T << ": " << r.error_message << '\n';
      return static_cast<int>(*r.error);
    }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-detector entanglement harvesting numerics"};
  app.require_subcommand(1);

  Common point_opts, sweep_opts, comm_opts;
  double t_ab = 0.0;
  unsigned threads = 0;
  double width = 0.2;
  double dx = -1.0;
  std::string only;

  auto* point = app.add_subcommand("point", "evaluate one configuration, one CSV row");
  add_common(point, point_opts);
  point->add_option("--t-ab", t_ab, "time delay t_AB / T");

  auto* sweep_cmd = app.add_subcommand("sweep", "t_AB sweep to CSV");
  add_common(sweep_cmd, sweep_opts);
  sweep_cmd->add_option("--threads", threads, "worker threads (0: hardware concurrency)");

  auto* comm = app.add_subcommand("commutator", "tabulate the smeared commutator over the t_AB grid");
  add_common(comm, comm_opts);
  comm->add_option("--width", width, "Gaussian test function width / T");
  comm->add_option("--dx", dx, "spatial separation / T (default: L_over_T)");

  auto* validate = app.add_subcommand("validate", "run the acceptance suite");
  validate->add_option("--only", only, "run a single criterion by id");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ErrorCode::config);
  }

  try {
    if (*point) {
      sweep::SweepConfig cfg = load(point_opts);
      cfg.pair.detector_b.center_tT = cfg.pair.detector_a.center_tT + t_ab;
      sweep::SweepRow row = sweep::run_point(cfg.pair, cfg.opts);
      Output out(cfg.out);
      sweep::write_csv({row}, out.os());
      return 0;
    }
    if (*sweep_cmd) {
      sweep::SweepConfig cfg = load(sweep_opts);
      std::vector<sweep::SweepRow> rows = sweep::run_sweep(cfg, threads);
      Output out(cfg.out);
      sweep::write_csv(rows, out.os());
      return first_error(rows);
    }
    if (*comm) {
      sweep::SweepConfig cfg = load(comm_opts);
      cfg.validate();
      double sep = dx >= 0.0 ? dx : cfg.pair.L();
      auto rows = sweep::commutator_table(cfg.pair.field, sep, width, cfg.grid());
      Output out(cfg.out);
      out.os() << "dt_T,re,im\n";
      for (const auto& r : rows)
        out.os() << sweep::format_number(r.dt_T) << ',' << sweep::format_number(r.re) << ','
                 << sweep::format_number(r.im) << '\n';
      return 0;
    }
    if (*validate) {
      bool all = true;
      for (const auto& c : validation::criteria()) {
        if (!only.empty() && c.id != only) continue;
        validation::CheckResult r = c.run();
        all = all && r.pass;
        std::cout << (r.pass ? "PASS " : "FAIL ") << c.id << ": " << r.detail << std::endl;
      }
      if (!only.empty() && !validation::find_criterion(only))
        throw ConfigError("validate: unknown criterion '" + only + "'");
      return all ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.code_name() << ": " << e.what() << '\n';
    return static_cast<int>(e.code());
  }
  return 0;
}
