#pragma once

// Walk-driven bandit agents. A decision runs a walk of T steps from the
// current start vertex under the current per-vertex field, samples the
// walker position, plays that arm, then rebuilds the start vertex and field
// from the empirical success rates.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qwbandit/casino.hpp"
#include "qwbandit/random.hpp"
#include "qwbandit/walk.hpp"

namespace qwbandit {

enum class WalkKind { Random, Quantum };

inline const char* to_string(WalkKind kind) { return kind == WalkKind::Random ? "rw" : "qw"; }

struct AgentConfig {
  WalkKind kind = WalkKind::Quantum;
  double a = 1.0;
  double b = 1.0;
  double c = 0.0;  // q0 for the random walk, theta0 (radians) for the quantum walk
  std::size_t steps = 1;

  // Throws std::invalid_argument naming the offending field.
  void validate() const {
    if (!(a >= 1.0)) throw std::invalid_argument("a: must be >= 1");
    if (!(b >= 1.0)) throw std::invalid_argument("b: must be >= 1");
    if (kind == WalkKind::Random) {
      if (!(c >= 0.0 && c <= 0.5)) throw std::invalid_argument("c: q0 must lie in [0, 1/2]");
    } else if (!(c >= 0.0 && c < 2.0 * std::numbers::pi)) {
      throw std::invalid_argument("c: theta0 must lie in [0, 2*pi)");
    }
    if (steps < 1) throw std::invalid_argument("T: must be >= 1");
  }
};

// f(u) = c * exp(-a * u^b)
inline double f_update(double p_hat, const AgentConfig& cfg) {
  return cfg.c * std::exp(-cfg.a * std::pow(p_hat, cfg.b));
}

struct AgentStats {
  std::vector<std::uint64_t> plays;     // H
  std::vector<std::uint64_t> rewards;   // L
  std::vector<double> p_hat;            // L/H, or 0 where H = 0

  explicit AgentStats(std::size_t n = 0) : plays(n, 0), rewards(n, 0), p_hat(n, 0.0) {}
};

struct AgentState {
  AgentStats stats;
  Vertex start = 0;
  std::variant<RwField, CoinField> field;
  std::size_t decisions = 0;
};

struct DecisionRecord {
  std::size_t j = 0;  // 1-based
  Vertex chosen = 0;
  int reward = 0;
  std::optional<Distribution> dist;
};

inline AgentState init_agent(const AgentConfig& cfg, std::size_t n, RandomStream& rng) {
  cfg.validate();
  require_cycle_size(n);
  AgentState state;
  state.stats = AgentStats(n);
  state.start = rng.uniform_index(n);
  if (cfg.kind == WalkKind::Random) {
    state.field = RwField::homogeneous(n, cfg.c);
  } else {
    state.field = CoinField::homogeneous(n, cfg.c);
  }
  return state;
}

/// Walk distribution after T steps from the current start vertex.
inline Distribution walk_distribution(const AgentState& state, const AgentConfig& cfg) {
  const std::size_t n = state.stats.plays.size();
  if (const auto* q = std::get_if<RwField>(&state.field)) {
    return rw_evolve(Distribution::point_mass(state.start, n), *q, cfg.steps);
  }
  const auto& coins = std::get<CoinField>(state.field);
  return measurement_distribution(qw_evolve(QwState::localized(state.start, n), coins, cfg.steps));
}

struct Decision {
  Vertex chosen;
  Distribution dist;
};

inline Decision decide(const AgentState& state, const AgentConfig& cfg, RandomStream& rng) {
  Distribution dist = walk_distribution(state, cfg);
  const Vertex chosen = sample_position(dist, rng);
  return {chosen, std::move(dist)};
}

inline void update_stats(AgentState& state, Vertex chosen, int reward) {
  auto& st = state.stats;
  require_vertex(chosen, st.plays.size());
  ++st.plays[chosen];
  if (reward == 1) ++st.rewards[chosen];
  st.p_hat[chosen] = static_cast<double>(st.rewards[chosen]) / static_cast<double>(st.plays[chosen]);
  ++state.decisions;
}

/// New start = argmax p_hat, ties broken uniformly (one variate only when
/// more than one vertex attains the maximum). New field = f(p_hat(x)).
inline void adjust(AgentState& state, const AgentConfig& cfg, RandomStream& rng) {
  const auto& p_hat = state.stats.p_hat;
  const std::size_t n = p_hat.size();

  std::vector<Vertex> maximizers;
  double best = -1.0;
  for (Vertex x = 0; x < n; ++x) {
    if (p_hat[x] > best) {
      best = p_hat[x];
      maximizers.assign(1, x);
    } else if (p_hat[x] == best) {
      maximizers.push_back(x);
    }
  }
  state.start = maximizers.size() == 1 ? maximizers.front()
                                       : maximizers[rng.uniform_index(maximizers.size())];

  std::vector<double> values(n);
  for (Vertex x = 0; x < n; ++x) values[x] = f_update(p_hat[x], cfg);
  if (cfg.kind == WalkKind::Random) {
    state.field = RwField(std::move(values));
  } else {
    state.field = CoinField(std::move(values));
  }
}

struct NoObserver {
  void operator()(const AgentState&, const DecisionRecord&) const noexcept {}
};

/// init, then J rounds of decide -> draw_reward -> update_stats -> adjust.
/// `observe` sees the state after update_stats of every decision.
template <class Observer = NoObserver>
std::vector<DecisionRecord> run_episode(const AgentConfig& cfg, const Casino& casino, std::size_t decisions,
                                        RandomStream& rng, bool trace, Observer&& observe = {}) {
  if (decisions < 1) throw std::invalid_argument("J: must be >= 1");
  AgentState state = init_agent(cfg, casino.size(), rng);
  std::vector<DecisionRecord> records;
  records.reserve(decisions);
  for (std::size_t j = 1; j <= decisions; ++j) {
    Decision d = decide(state, cfg, rng);
    const int reward = draw_reward(casino, d.chosen, rng);
    update_stats(state, d.chosen, reward);
    DecisionRecord rec{j, d.chosen, reward, std::nullopt};
    if (trace) rec.dist = std::move(d.dist);
    observe(state, rec);
    records.push_back(std::move(rec));
    adjust(state, cfg, rng);
  }
  return records;
}

}  // namespace qwbandit
