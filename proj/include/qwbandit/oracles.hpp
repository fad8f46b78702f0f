#pragma once

// Dense reference implementations of both walks. Slow by construction; they
// exist to cross-check the local recurrences in walk.hpp.
//
// Flattened index for the quantum walk is vertex-major, coin-minor:
//   index(x, e) = 3 * x + e,  e in {0: |->, 1: |O>, 2: |+>}.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "qwbandit/random.hpp"
#include "qwbandit/walk.hpp"

namespace qwbandit {

using DenseUnitary = Eigen::MatrixXcd;
using DenseStochastic = Eigen::MatrixXd;

/// U = S C built literally from the operator definitions:
///   S = S^dag (x) |-><-| + I (x) |O><O| + S (x) |+><+|,   S = sum_x |x+1><x|
///   C = sum_x |x><x| (x) C(x)
inline DenseUnitary build_dense_unitary(const CoinField& coins, std::size_t n) {
  require_cycle_size(n);
  if (coins.size() != n) throw std::invalid_argument("build_dense_unitary: coin field length mismatch");
  const auto dim = static_cast<Eigen::Index>(3 * n);
  auto at = [](Vertex x, int e) { return static_cast<Eigen::Index>(3 * x + e); };

  DenseUnitary shift = DenseUnitary::Zero(dim, dim);
  for (Vertex x = 0; x < n; ++x) {
    shift(at(anticlockwise(x, n), 0), at(x, 0)) = 1.0;
    shift(at(x, 1), at(x, 1)) = 1.0;
    shift(at(clockwise(x, n), 2), at(x, 2)) = 1.0;
  }

  DenseUnitary coin = DenseUnitary::Zero(dim, dim);
  for (Vertex x = 0; x < n; ++x) {
    const auto c = coin_matrix<Complex>(coins[x]);
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k) coin(at(x, i), at(x, k)) = c[i][k];
  }
  return shift * coin;
}

inline Eigen::VectorXcd flatten(const QwState& state) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(3 * state.size()));
  for (Vertex x = 0; x < state.size(); ++x)
    for (int e = 0; e < 3; ++e) v(static_cast<Eigen::Index>(3 * x + e)) = state[x][e];
  return v;
}

inline QwState unflatten(const Eigen::VectorXcd& v) {
  std::vector<Amplitude3<Complex>> psi(static_cast<std::size_t>(v.size() / 3));
  for (Vertex x = 0; x < psi.size(); ++x)
    for (int e = 0; e < 3; ++e) psi[x][e] = v(static_cast<Eigen::Index>(3 * x + e));
  return QwState(std::move(psi));
}

inline QwState dense_evolve(const QwState& state, const DenseUnitary& u, std::size_t steps) {
  if (u.rows() != u.cols() || u.rows() != static_cast<Eigen::Index>(3 * state.size())) {
    throw std::invalid_argument("dense_evolve: operator is " + std::to_string(u.rows()) + "x" +
                                std::to_string(u.cols()) + " but state dimension is " +
                                std::to_string(3 * state.size()));
  }
  Eigen::VectorXcd v = flatten(state);
  for (std::size_t t = 0; t < steps; ++t) v = u * v;
  return unflatten(v);
}

/// Column x holds the outgoing probabilities of vertex x.
inline DenseStochastic build_dense_stochastic(const RwField& q) {
  const std::size_t n = q.size();
  require_cycle_size(n);
  DenseStochastic m = DenseStochastic::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Vertex x = 0; x < n; ++x) {
    const auto col = static_cast<Eigen::Index>(x);
    m(static_cast<Eigen::Index>(clockwise(x, n)), col) += q[x];
    m(static_cast<Eigen::Index>(anticlockwise(x, n)), col) += q[x];
    m(col, col) += 1.0 - 2.0 * q[x];
  }
  return m;
}

inline Distribution rw_matrix_power(const RwField& q, const Distribution& nu0, std::size_t steps) {
  if (q.size() != nu0.size()) throw std::invalid_argument("rw_matrix_power: length mismatch");
  const DenseStochastic m = build_dense_stochastic(q);
  Eigen::VectorXd v(static_cast<Eigen::Index>(nu0.size()));
  for (Vertex x = 0; x < nu0.size(); ++x) v(static_cast<Eigen::Index>(x)) = nu0[x];
  for (std::size_t t = 0; t < steps; ++t) v = m * v;
  return Distribution(std::vector<double>(v.data(), v.data() + v.size()));
}

inline double max_amplitude_difference(const QwState& a, const QwState& b) {
  double worst = 0.0;
  for (Vertex x = 0; x < a.size(); ++x)
    for (int e = 0; e < 3; ++e) worst = std::max(worst, std::abs(a[x][e] - b[x][e]));
  return worst;
}

inline double max_probability_difference(const Distribution& a, const Distribution& b) {
  double worst = 0.0;
  for (Vertex x = 0; x < a.size(); ++x) worst = std::max(worst, std::abs(a[x] - b[x]));
  return worst;
}

inline double unitarity_defect(const DenseUnitary& u) {
  return (u.adjoint() * u - DenseUnitary::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// Equivalence sweep shared by the `verify` command and the test suite.
// ---------------------------------------------------------------------------

struct EquivalenceGrid {
  std::size_t min_vertices = 3;
  std::size_t max_vertices = 8;
  std::size_t max_steps = 20;
  std::size_t fields_per_size = 50;
  std::uint64_t seed = 0x0A11CE5EEDULL;
};

struct EquivalenceReport {
  double max_qw_error = 0.0;
  double max_rw_error = 0.0;
  double max_unitarity_defect = 0.0;
  std::size_t comparisons = 0;
};

inline CoinField random_coin_field(std::size_t n, RandomStream& rng) {
  std::vector<double> theta(n);
  for (auto& t : theta) t = 2.0 * std::numbers::pi * rng.uniform();
  return CoinField(std::move(theta));
}

inline RwField random_rw_field(std::size_t n, RandomStream& rng) {
  std::vector<double> q(n);
  for (auto& v : q) v = 0.5 * rng.uniform();
  return RwField(std::move(q));
}

// Normalized state with independent complex amplitudes on every site.
inline QwState random_qw_state(std::size_t n, RandomStream& rng) {
  std::vector<Amplitude3<Complex>> psi(n);
  double norm = 0.0;
  for (auto& v : psi)
    for (auto& a : v) {
      a = Complex(rng.uniform() - 0.5, rng.uniform() - 0.5);
      norm += std::norm(a);
    }
  const double scale = 1.0 / std::sqrt(norm);
  for (auto& v : psi)
    for (auto& a : v) a *= scale;
  return QwState(std::move(psi));
}

inline Distribution random_distribution(std::size_t n, RandomStream& rng) {
  std::vector<double> p(n);
  double sum = 0.0;
  for (auto& v : p) sum += (v = rng.uniform());
  for (auto& v : p) v /= sum;
  return Distribution(std::move(p));
}

/// Compares the local recurrences against the dense operators for every
/// cycle size and every step count 1..max_steps in the grid.
inline EquivalenceReport run_equivalence_suite(const EquivalenceGrid& grid) {
  EquivalenceReport report;
  RandomStream rng(grid.seed);
  for (std::size_t n = grid.min_vertices; n <= grid.max_vertices; ++n) {
    for (std::size_t f = 0; f < grid.fields_per_size; ++f) {
      const CoinField coins = random_coin_field(n, rng);
      const DenseUnitary u = build_dense_unitary(coins, n);
      report.max_unitarity_defect = std::max(report.max_unitarity_defect, unitarity_defect(u));
      const auto mats = coin_matrices<Complex>(coins);
      QwState fast = random_qw_state(n, rng);
      Eigen::VectorXcd dense = flatten(fast);

      const RwField q = random_rw_field(n, rng);
      const DenseStochastic m = build_dense_stochastic(q);
      Distribution nu = random_distribution(n, rng);
      Eigen::VectorXd nu_dense = Eigen::Map<const Eigen::VectorXd>(nu.values().data(),
                                                                   static_cast<Eigen::Index>(n));

      for (std::size_t t = 1; t <= grid.max_steps; ++t) {
        fast = qw_step(fast, std::span<const CoinMatrix>(mats));
        dense = u * dense;
        report.max_qw_error = std::max(report.max_qw_error, max_amplitude_difference(fast, unflatten(dense)));

        nu = rw_step(nu, q);
        nu_dense = m * nu_dense;
        for (Vertex x = 0; x < n; ++x)
          report.max_rw_error = std::max(report.max_rw_error,
                                         std::abs(nu[x] - nu_dense(static_cast<Eigen::Index>(x))));
        ++report.comparisons;
      }
    }
  }
  return report;
}

}  // namespace qwbandit
