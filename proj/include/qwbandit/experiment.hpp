#pragma once

// Ensemble execution, sweeps, traces and CSV output.
//
// Run k of an experiment with master seed S draws from
// RandomStream(derive_seed(S, k)), so any run can be replayed alone and the
// output does not depend on the thread count.

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "qwbandit/agent.hpp"
#include "qwbandit/config.hpp"
#include "qwbandit/metrics.hpp"
#include "qwbandit/random.hpp"

namespace qwbandit {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// %.17g: round-trips every double.
inline std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Summary {
  double final_mean_reward = 0.0;  // M(J)
  double final_regret = 0.0;       // rho(J)
  double max_cdr = 0.0;
};

struct ExperimentResult {
  MetricSeries series;
  Summary summary;
};

/// Calls body(k) for k in [0, count) on at most `threads` workers.
template <class Body>
void parallel_for(std::size_t count, std::size_t threads, Body&& body) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t k = 0; k < count; ++k) body(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < count && !failed; k = next++) {
          try {
            body(k);
          } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

inline RunEnsemble run_ensemble(const ExperimentConfig& cfg) {
  cfg.validate();
  RunEnsemble ensemble{std::vector<std::vector<DecisionRecord>>(cfg.runs), cfg.casino};
  parallel_for(cfg.runs, cfg.threads, [&](std::size_t k) {
    RandomStream rng(derive_seed(cfg.seed, k));
    ensemble.runs[k] = run_episode(cfg.agent, cfg.casino, cfg.decisions, rng, false);
  });
  return ensemble;
}

inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  const RunEnsemble ensemble = run_ensemble(cfg);
  ExperimentResult result;
  result.series = compute_metrics(ensemble);
  result.summary = {result.series.mean_reward.back(), result.series.regret.back(), max_cdr(result.series.cdr)};
  return result;
}

// j,M,rho,cdr
inline void write_metrics_csv(std::ostream& out, const MetricSeries& s) {
  out << "j,M,rho,cdr\n";
  for (std::size_t j = 0; j < s.mean_reward.size(); ++j) {
    out << (j + 1) << ',' << format_real(s.mean_reward[j]) << ',' << format_real(s.regret[j]) << ','
        << format_real(s.cdr[j]) << '\n';
  }
}

struct SweepRow {
  double value = 0.0;
  Summary summary;
};

struct SweepTable {
  SweepAxis axis = SweepAxis::T;
  std::vector<SweepRow> rows;
};

/// Cell i runs the base config with the axis value substituted and master
/// seed derive_cell_seed(base.seed, i).
inline SweepTable run_sweep(const SweepSpec& spec) {
  spec.validate();
  SweepTable table{spec.axis, {}};
  for (std::size_t i = 0; i < spec.values.size(); ++i) {
    ExperimentConfig cfg = spec.cell(spec.values[i]);
    cfg.seed = derive_cell_seed(spec.base.seed, i);
    table.rows.push_back({spec.values[i], run_experiment(cfg).summary});
  }
  return table;
}

// axis,value,M_J,rho_J,max_cdr
inline void write_sweep_csv(std::ostream& out, const SweepTable& table) {
  out << "axis,value,M_J,rho_J,max_cdr\n";
  for (const auto& row : table.rows) {
    out << to_string(table.axis) << ',' << format_real(row.value) << ',' << format_real(row.summary.final_mean_reward)
        << ',' << format_real(row.summary.final_regret) << ',' << format_real(row.summary.max_cdr) << '\n';
  }
}

struct RunTrace {
  std::size_t run = 0;
  std::vector<DecisionRecord> records;  // dist kept only at cfg.trace_decisions
};

/// Replays each run in cfg.trace_runs with distribution tracing enabled.
inline std::vector<RunTrace> run_trace(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.trace_runs.empty()) throw ConfigError("trace_runs", "must list at least one run");
  std::vector<RunTrace> traces(cfg.trace_runs.size());
  std::vector<bool> keep(cfg.decisions + 1, false);
  for (std::size_t j : cfg.trace_decisions) keep[j] = true;
  parallel_for(traces.size(), cfg.threads, [&](std::size_t i) {
    const std::size_t k = cfg.trace_runs[i];
    RandomStream rng(derive_seed(cfg.seed, k));
    traces[i].run = k;
    traces[i].records = run_episode(cfg.agent, cfg.casino, cfg.decisions, rng, true);
    for (auto& rec : traces[i].records)
      if (!keep[rec.j]) rec.dist.reset();
  });
  return traces;
}

// j,chosen,reward
inline void write_decisions_csv(std::ostream& out, const RunTrace& trace) {
  out << "j,chosen,reward\n";
  for (const auto& rec : trace.records) out << rec.j << ',' << rec.chosen << ',' << rec.reward << '\n';
}

// j,x,prob
inline void write_distribution_csv(std::ostream& out, const RunTrace& trace) {
  out << "j,x,prob\n";
  for (const auto& rec : trace.records) {
    if (!rec.dist) continue;
    for (Vertex x = 0; x < rec.dist->size(); ++x) out << rec.j << ',' << x << ',' << format_real((*rec.dist)[x]) << '\n';
  }
}

template <class Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  writer(out);
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

/// Writes run<k>_decisions.csv and run<k>_dist.csv per traced run into dir.
inline std::vector<std::filesystem::path> write_traces(const std::filesystem::path& dir,
                                                       const std::vector<RunTrace>& traces) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> written;
  for (const auto& t : traces) {
    const std::string stem = "run" + std::to_string(t.run);
    written.push_back(dir / (stem + "_decisions.csv"));
    write_file(written.back(), [&](std::ostream& o) { write_decisions_csv(o, t); });
    written.push_back(dir / (stem + "_dist.csv"));
    write_file(written.back(), [&](std::ostream& o) { write_distribution_csv(o, t); });
  }
  return written;
}

}  // namespace qwbandit
