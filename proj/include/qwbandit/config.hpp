#pragma once

// Experiment configuration and its JSON form.
//
// Angles may be given as plain numbers (radians) or as rational multiples of
// pi written as strings: "5/16 pi", "29pi/64", "pi", "0.25 pi".

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "qwbandit/agent.hpp"
#include "qwbandit/casino.hpp"

namespace qwbandit {

/// Invalid configuration; `field()` names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

namespace detail {

inline double parse_number(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty number");
  std::size_t used = 0;
  const double v = std::stod(text, &used);
  if (used != text.size()) throw std::invalid_argument("trailing characters in '" + text + "'");
  return v;
}

// "p", "p/q"; empty means 1.
inline double parse_ratio(const std::string& text) {
  if (text.empty()) return 1.0;
  const auto slash = text.find('/');
  if (slash == std::string::npos) return parse_number(text);
  return parse_number(text.substr(0, slash)) / parse_number(text.substr(slash + 1));
}

}  // namespace detail

inline double parse_angle(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '*') s.push_back(static_cast<char>(std::tolower(ch)));
  const auto at = s.find("pi");
  if (at == std::string::npos) return detail::parse_ratio(s);
  const std::string left = s.substr(0, at);
  const std::string right = s.substr(at + 2);
  double value = std::numbers::pi * detail::parse_ratio(left);
  if (!right.empty()) {
    if (right.front() != '/') throw std::invalid_argument("unexpected '" + right + "' after pi");
    value /= detail::parse_number(right.substr(1));
  }
  return value;
}

inline std::optional<WalkKind> parse_model(const std::string& name) {
  if (name == "rw") return WalkKind::Random;
  if (name == "qw") return WalkKind::Quantum;
  return std::nullopt;
}

inline const std::vector<std::size_t>& default_trace_decisions() {
  static const std::vector<std::size_t> js{1, 500, 1000, 1100, 1200, 1300, 1400, 1500};
  return js;
}

struct ExperimentConfig {
  AgentConfig agent;
  std::size_t decisions = 5000;  // J
  std::size_t runs = 500;        // K
  std::string casino_name = "paper32";
  Casino casino = paper_casino();
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  std::vector<std::size_t> trace_runs;  // 0-based run indices
  std::vector<std::size_t> trace_decisions = default_trace_decisions();
  std::string output;

  std::size_t vertices() const noexcept { return casino.size(); }

  void validate() const {
    try {
      agent.validate();
    } catch (const std::invalid_argument& e) {
      const std::string msg = e.what();
      const auto colon = msg.find(':');
      throw ConfigError(msg.substr(0, colon), msg.substr(colon + 2));
    }
    if (decisions < 1) throw ConfigError("J", "must be >= 1");
    if (runs < 1) throw ConfigError("K", "must be >= 1");
    if (threads < 1) throw ConfigError("threads", "must be >= 1");
    for (std::size_t k : trace_runs)
      if (k >= runs) throw ConfigError("trace_runs", "run index " + std::to_string(k) + " >= K");
    for (std::size_t j : trace_decisions)
      if (j < 1 || j > decisions) throw ConfigError("trace_decisions", "decision " + std::to_string(j) + " outside [1, J]");
  }
};

/// Table-1 defaults per model.
inline AgentConfig default_agent(WalkKind kind) {
  if (kind == WalkKind::Quantum) return {kind, 5.0, 6.0, 5.0 * std::numbers::pi / 16.0, 8};
  return {kind, 9.0, 6.0, 0.5, 8};
}

namespace detail {

template <class T>
T get_field(const nlohmann::json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(key, e.what());
  }
}

inline std::size_t get_count(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) throw ConfigError(key, "expected a nonnegative integer");
  return v.get<std::size_t>();
}

inline double get_real_or_angle(const nlohmann::json& v, const char* key) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    try {
      return parse_angle(v.get<std::string>());
    } catch (const std::exception& e) {
      throw ConfigError(key, std::string("cannot parse '") + v.get<std::string>() + "': " + e.what());
    }
  }
  throw ConfigError(key, "expected a number or a string such as \"5/16 pi\"");
}

inline std::vector<std::size_t> get_index_list(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_array()) throw ConfigError(key, "expected an array of integers");
  std::vector<std::size_t> out;
  for (const auto& e : v) {
    if (!e.is_number_integer() || e.get<long long>() < 0) throw ConfigError(key, "expected nonnegative integers");
    out.push_back(e.get<std::size_t>());
  }
  return out;
}

}  // namespace detail

/// Parses an ExperimentConfig object. Only "model" is required; missing
/// keys fall back to the Table-1 setup for that model. Unknown keys are
/// rejected.
inline ExperimentConfig config_from_json(const nlohmann::json& j) {
  static const std::set<std::string> known{"model", "N",       "T",          "J",      "K",
                                           "a",     "b",       "c",          "casino", "seed",
                                           "threads", "trace_runs", "trace_decisions", "output"};
  if (!j.is_object()) throw ConfigError("config", "expected a JSON object");
  for (const auto& [key, _] : j.items())
    if (!known.contains(key)) throw ConfigError(key, "unknown field");

  if (!j.contains("model")) throw ConfigError("model", "missing");
  const auto kind = parse_model(detail::get_field<std::string>(j, "model"));
  if (!kind) throw ConfigError("model", "expected \"rw\" or \"qw\"");

  ExperimentConfig cfg;
  cfg.agent = default_agent(*kind);
  if (j.contains("T")) cfg.agent.steps = detail::get_count(j, "T");
  if (j.contains("a")) cfg.agent.a = detail::get_real_or_angle(j.at("a"), "a");
  if (j.contains("b")) cfg.agent.b = detail::get_real_or_angle(j.at("b"), "b");
  if (j.contains("c")) cfg.agent.c = detail::get_real_or_angle(j.at("c"), "c");
  if (j.contains("J")) cfg.decisions = detail::get_count(j, "J");
  if (j.contains("K")) cfg.runs = detail::get_count(j, "K");
  if (j.contains("threads")) cfg.threads = detail::get_count(j, "threads");
  if (j.contains("seed")) {
    const auto& s = j.at("seed");
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0))
      throw ConfigError("seed", "expected a nonnegative 64-bit integer");
    cfg.seed = s.get<std::uint64_t>();
  }
  if (j.contains("casino")) {
    const auto& c = j.at("casino");
    if (c.is_string()) {
      if (c.get<std::string>() != "paper32") throw ConfigError("casino", "unknown preset '" + c.get<std::string>() + "'");
    } else if (c.is_array()) {
      try {
        cfg.casino = Casino(c.get<std::vector<double>>());
      } catch (const std::exception& e) {
        throw ConfigError("casino", e.what());
      }
      cfg.casino_name = "custom";
    } else {
      throw ConfigError("casino", "expected \"paper32\" or an array of probabilities");
    }
  }
  if (j.contains("N") && detail::get_count(j, "N") != cfg.casino.size())
    throw ConfigError("N", "does not match the casino size " + std::to_string(cfg.casino.size()));
  if (j.contains("trace_runs")) cfg.trace_runs = detail::get_index_list(j, "trace_runs");
  if (j.contains("trace_decisions")) {
    cfg.trace_decisions = detail::get_index_list(j, "trace_decisions");
  } else {
    std::erase_if(cfg.trace_decisions, [&](std::size_t d) { return d > cfg.decisions; });
  }
  if (j.contains("output")) cfg.output = detail::get_field<std::string>(j, "output");

  cfg.validate();
  return cfg;
}

enum class SweepAxis { T, a, b, c };

inline const char* to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::T: return "T";
    case SweepAxis::a: return "a";
    case SweepAxis::b: return "b";
    case SweepAxis::c: return "c";
  }
  return "?";
}

struct SweepSpec {
  SweepAxis axis = SweepAxis::T;
  std::vector<double> values;
  ExperimentConfig base;

  // Base config with the axis set to `value`.
  ExperimentConfig cell(double value) const {
    ExperimentConfig cfg = base;
    switch (axis) {
      case SweepAxis::T:
        if (value < 1 || value != std::floor(value)) throw ConfigError("values", "T must be a positive integer");
        cfg.agent.steps = static_cast<std::size_t>(value);
        break;
      case SweepAxis::a: cfg.agent.a = value; break;
      case SweepAxis::b: cfg.agent.b = value; break;
      case SweepAxis::c: cfg.agent.c = value; break;
    }
    try {
      cfg.validate();
    } catch (const ConfigError& e) {
      throw ConfigError("values", std::string(to_string(axis)) + " = " + std::to_string(value) + ": " + e.what());
    }
    return cfg;
  }

  void validate() const {
    if (values.empty()) throw ConfigError("values", "must not be empty");
    for (double v : values) (void)cell(v);
  }
};

/// {"axis": "T", "values": [2, 4, 8], "base": {...ExperimentConfig...}}
inline SweepSpec sweep_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("sweep", "expected a JSON object");
  for (const auto& [key, _] : j.items())
    if (key != "axis" && key != "values" && key != "base") throw ConfigError(key, "unknown field");
  if (!j.contains("base")) throw ConfigError("base", "missing");
  if (!j.contains("axis")) throw ConfigError("axis", "missing");
  if (!j.contains("values") || !j.at("values").is_array()) throw ConfigError("values", "expected an array");

  SweepSpec spec;
  spec.base = config_from_json(j.at("base"));
  const auto axis = detail::get_field<std::string>(j, "axis");
  if (axis == "T") spec.axis = SweepAxis::T;
  else if (axis == "a") spec.axis = SweepAxis::a;
  else if (axis == "b") spec.axis = SweepAxis::b;
  else if (axis == "c") spec.axis = SweepAxis::c;
  else throw ConfigError("axis", "expected one of T, a, b, c");
  for (const auto& v : j.at("values")) spec.values.push_back(detail::get_real_or_angle(v, "values"));
  spec.validate();
  return spec;
}

}  // namespace qwbandit
