#pragma once

// Figures of merit over K independent runs of J decisions each. All
// reductions walk runs in ascending index so results do not depend on how
// the runs were scheduled.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qwbandit/agent.hpp"
#include "qwbandit/casino.hpp"

namespace qwbandit {

struct RunEnsemble {
  std::vector<std::vector<DecisionRecord>> runs;
  Casino casino;

  std::size_t run_count() const noexcept { return runs.size(); }
  std::size_t decision_count() const noexcept { return runs.empty() ? 0 : runs.front().size(); }

  void validate() const {
    if (runs.empty() || runs.front().empty()) throw std::invalid_argument("empty ensemble");
    const std::size_t j = runs.front().size();
    for (const auto& run : runs) {
      if (run.size() != j) throw std::invalid_argument("ensemble runs differ in length");
      for (const auto& rec : run) require_vertex(rec.chosen, casino.size());
    }
  }
};

struct MetricSeries {
  std::vector<double> mean_reward;  // M(j)
  std::vector<double> regret;       // rho(j)
  std::vector<double> cdr;          // CDR(j)
};

// M(j) = (1/K) sum_k sum_{l<=j} r_{l,k}; integer totals, one division per j.
inline std::vector<double> mean_total_reward(const RunEnsemble& e) {
  e.validate();
  const std::size_t k = e.run_count();
  std::vector<std::uint64_t> per_decision(e.decision_count(), 0);
  for (const auto& run : e.runs)
    for (std::size_t j = 0; j < run.size(); ++j) per_decision[j] += static_cast<std::uint64_t>(run[j].reward);
  std::vector<double> m(per_decision.size());
  std::uint64_t total = 0;
  for (std::size_t j = 0; j < m.size(); ++j) {
    total += per_decision[j];
    m[j] = static_cast<double>(total) / static_cast<double>(k);
  }
  return m;
}

// rho(j) = (1/K) sum_k sum_{l<=j} (p(x*) - p(x_{l,k})). Cumulative per-arm
// pick counts are exact integers; each gap term is then nondecreasing in j.
inline std::vector<double> cumulative_regret(const RunEnsemble& e) {
  e.validate();
  const std::size_t n = e.casino.size();
  const double best = e.casino[best_arm(e.casino)];
  std::vector<double> gap(n);
  for (Vertex x = 0; x < n; ++x) gap[x] = best - e.casino[x];

  const std::size_t decisions = e.decision_count();
  std::vector<std::uint64_t> picks(n, 0);
  std::vector<std::vector<std::uint32_t>> per_decision(decisions, std::vector<std::uint32_t>(n, 0));
  for (const auto& run : e.runs)
    for (std::size_t j = 0; j < decisions; ++j) ++per_decision[j][run[j].chosen];

  std::vector<double> rho(decisions);
  for (std::size_t j = 0; j < decisions; ++j) {
    double sum = 0.0;
    for (Vertex x = 0; x < n; ++x) {
      picks[x] += per_decision[j][x];
      sum += static_cast<double>(picks[x]) * gap[x];
    }
    rho[j] = sum / static_cast<double>(e.run_count());
  }
  return rho;
}

// CDR(j) = fraction of runs whose j-th choice is the best arm.
inline std::vector<double> correct_decision_rate(const RunEnsemble& e) {
  e.validate();
  const Vertex best = best_arm(e.casino);
  std::vector<std::uint64_t> hits(e.decision_count(), 0);
  for (const auto& run : e.runs)
    for (std::size_t j = 0; j < run.size(); ++j) hits[j] += run[j].chosen == best ? 1 : 0;
  std::vector<double> cdr(hits.size());
  for (std::size_t j = 0; j < cdr.size(); ++j)
    cdr[j] = static_cast<double>(hits[j]) / static_cast<double>(e.run_count());
  return cdr;
}

inline double max_cdr(const std::vector<double>& cdr) {
  if (cdr.empty()) throw std::invalid_argument("max_cdr: empty series");
  return *std::max_element(cdr.begin(), cdr.end());
}

inline MetricSeries compute_metrics(const RunEnsemble& e) {
  return {mean_total_reward(e), cumulative_regret(e), correct_decision_rate(e)};
}

}  // namespace qwbandit
