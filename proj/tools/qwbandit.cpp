// qwbandit: run, sweep and trace walk-based bandit experiments; verify the
// walk engines against the dense reference operators.
//
// Exit codes: 0 success, 1 invalid config, 2 I/O error, 3 verification failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "qwbandit/qwbandit.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitIo = 2;
constexpr int kExitVerify = 3;

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw qwbandit::IoError("cannot read " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw qwbandit::ConfigError("config", std::string("malformed JSON: ") + e.what());
  }
}

struct Overrides {
  std::optional<std::size_t> threads;
  std::optional<std::string> output;

  void apply(qwbandit::ExperimentConfig& cfg) const {
    if (threads) cfg.threads = *threads;
    if (output) cfg.output = *output;
    cfg.validate();
  }
};

void print_summary(std::ostream& out, const qwbandit::Summary& s) {
  out << "M_J=" << qwbandit::format_real(s.final_mean_reward) << " rho_J=" << qwbandit::format_real(s.final_regret)
      << " max_cdr=" << qwbandit::format_real(s.max_cdr) << '\n';
}

int cmd_run(const std::string& path, const Overrides& ov) {
  auto cfg = qwbandit::config_from_json(load_json(path));
  ov.apply(cfg);
  const auto result = qwbandit::run_experiment(cfg);
  if (cfg.output.empty()) {
    qwbandit::write_metrics_csv(std::cout, result.series);
    print_summary(std::cerr, result.summary);
  } else {
    qwbandit::write_file(cfg.output, [&](std::ostream& o) { qwbandit::write_metrics_csv(o, result.series); });
    print_summary(std::cout, result.summary);
  }
  return kExitOk;
}

int cmd_sweep(const std::string& path, const Overrides& ov) {
  auto spec = qwbandit::sweep_from_json(load_json(path));
  ov.apply(spec.base);
  const auto table = qwbandit::run_sweep(spec);
  if (spec.base.output.empty()) {
    qwbandit::write_sweep_csv(std::cout, table);
  } else {
    qwbandit::write_file(spec.base.output, [&](std::ostream& o) { qwbandit::write_sweep_csv(o, table); });
    qwbandit::write_sweep_csv(std::cout, table);
  }
  return kExitOk;
}

int cmd_trace(const std::string& path, const Overrides& ov) {
  auto cfg = qwbandit::config_from_json(load_json(path));
  ov.apply(cfg);
  if (cfg.output.empty()) throw qwbandit::ConfigError("output", "trace needs an output directory");
  const auto traces = qwbandit::run_trace(cfg);
  for (const auto& file : qwbandit::write_traces(cfg.output, traces)) std::cout << file.string() << '\n';
  return kExitOk;
}

int cmd_verify(const qwbandit::EquivalenceGrid& grid) {
  const auto report = qwbandit::run_equivalence_suite(grid);
  const bool qw_ok = report.max_qw_error < 1e-12;
  const bool rw_ok = report.max_rw_error < 1e-12;
  const bool unitary_ok = report.max_unitarity_defect < 1e-10;
  std::printf("comparisons:            %zu\n", report.comparisons);
  std::printf("qw max amplitude error: %.3e  %s\n", report.max_qw_error, qw_ok ? "ok" : "FAIL");
  std::printf("rw max prob error:      %.3e  %s\n", report.max_rw_error, rw_ok ? "ok" : "FAIL");
  std::printf("max unitarity defect:   %.3e  %s\n", report.max_unitarity_defect, unitary_ok ? "ok" : "FAIL");
  return qw_ok && rw_ok && unitary_ok ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random-walk and quantum-walk bandit experiments"};
  app.require_subcommand(1);

  std::string config_path;
  Overrides ov;
  auto add_common = [&](CLI::App* sub, const char* what) {
    sub->add_option("config", config_path, what)->required()->check(CLI::ExistingFile);
    sub->add_option("--threads", ov.threads, "Override the thread count");
    sub->add_option("--output", ov.output, "Override the output path");
  };

  auto* run = app.add_subcommand("run", "Run K episodes and write j,M,rho,cdr");
  add_common(run, "Experiment config (JSON)");
  auto* sweep = app.add_subcommand("sweep", "Run one experiment per axis value and write the summary table");
  add_common(sweep, "Sweep spec (JSON)");
  auto* trace = app.add_subcommand("trace", "Write per-decision choices and sampling distributions of selected runs");
  add_common(trace, "Experiment config (JSON)");

  qwbandit::EquivalenceGrid grid;
  auto* verify = app.add_subcommand("verify", "Check the walk engines against dense reference operators");
  verify->add_option("--max-n", grid.max_vertices, "Largest cycle size")->capture_default_str();
  verify->add_option("--max-t", grid.max_steps, "Largest step count")->capture_default_str();
  verify->add_option("--fields", grid.fields_per_size, "Random fields per cycle size")->capture_default_str();
  verify->add_option("--seed", grid.seed, "Seed for the random fields")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(config_path, ov);
    if (*sweep) return cmd_sweep(config_path, ov);
    if (*trace) return cmd_trace(config_path, ov);
    if (*verify) return cmd_verify(grid);
  } catch (const qwbandit::ConfigError& e) {
    std::cerr << "invalid config: " << e.what() << '\n';
    return kExitConfig;
  } catch (const qwbandit::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid config: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}
