#pragma once

// Lazy random walk and three-state coined quantum walk on the N-cycle.
//
// Vertices are labelled 0..N-1 clockwise; x+1 and x-1 wrap modulo N.
// Internal (coin) states are ordered (|->, |O>, |+>) everywhere: index 0 is
// anti-clockwise, 1 is stay, 2 is clockwise. Coin matrices, amplitude vectors
// and the dense oracle all follow this order.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qwbandit/random.hpp"

namespace qwbandit {

using Vertex = std::size_t;

inline constexpr std::size_t kMinCycleSize = 3;

constexpr Vertex clockwise(Vertex x, std::size_t n) noexcept { return x + 1 == n ? 0 : x + 1; }
constexpr Vertex anticlockwise(Vertex x, std::size_t n) noexcept { return x == 0 ? n - 1 : x - 1; }

// Signed displacement from `from` to `to`, taken in (-N/2, N/2].
constexpr long signed_displacement(Vertex from, Vertex to, std::size_t n) noexcept {
  auto d = static_cast<long>((to + n - from) % n);
  const auto half = static_cast<long>(n / 2);
  return d > half ? d - static_cast<long>(n) : d;
}

inline void require_cycle_size(std::size_t n) {
  if (n < kMinCycleSize) {
    throw std::invalid_argument("cycle size must be at least 3, got " + std::to_string(n));
  }
}

inline void require_vertex(Vertex x, std::size_t n) {
  if (x >= n) {
    throw std::out_of_range("vertex " + std::to_string(x) + " outside cycle of size " +
                            std::to_string(n));
  }
}

// ---------------------------------------------------------------------------
// Random walk
// ---------------------------------------------------------------------------

/// Per-vertex move probability q(x): the walker steps clockwise with
/// probability q(x), anti-clockwise with q(x), and stays with 1 - 2q(x).
class RwField {
 public:
  RwField() = default;
  explicit RwField(std::vector<double> q) : q_(std::move(q)) {
    for (std::size_t x = 0; x < q_.size(); ++x) {
      if (!(q_[x] >= 0.0 && q_[x] <= 0.5)) {
        throw std::invalid_argument("q(" + std::to_string(x) + ") = " + std::to_string(q_[x]) +
                                    " outside [0, 1/2]");
      }
    }
  }
  static RwField homogeneous(std::size_t n, double q) { return RwField(std::vector<double>(n, q)); }

  std::size_t size() const noexcept { return q_.size(); }
  double operator[](Vertex x) const { return q_[x]; }
  std::span<const double> values() const noexcept { return q_; }

 private:
  std::vector<double> q_;
};

/// Probability vector over the cycle vertices. Used both for the random
/// walk distribution and for the Born-rule measurement distribution.
class Distribution {
 public:
  Distribution() = default;
  explicit Distribution(std::vector<double> p) : p_(std::move(p)) {}

  static Distribution point_mass(Vertex s, std::size_t n) {
    require_cycle_size(n);
    require_vertex(s, n);
    std::vector<double> p(n, 0.0);
    p[s] = 1.0;
    return Distribution(std::move(p));
  }

  std::size_t size() const noexcept { return p_.size(); }
  double operator[](Vertex x) const { return p_[x]; }
  double& operator[](Vertex x) { return p_[x]; }
  std::span<const double> values() const noexcept { return p_; }

  double total() const noexcept {
    double sum = 0.0;
    for (double v : p_) sum += v;
    return sum;
  }

 private:
  std::vector<double> p_;
};

using RwDistribution = Distribution;

/// One step of the lazy walk:
///   nu'(x) = q(x+1) nu(x+1) + (1 - 2q(x)) nu(x) + q(x-1) nu(x-1)
inline Distribution rw_step(const Distribution& nu, const RwField& q) {
  const std::size_t n = nu.size();
  if (q.size() != n) {
    throw std::invalid_argument("rw_step: distribution has " + std::to_string(n) +
                                " vertices but field has " + std::to_string(q.size()));
  }
  std::vector<double> next(n);
  for (Vertex x = 0; x < n; ++x) {
    const Vertex r = clockwise(x, n);
    const Vertex l = anticlockwise(x, n);
    next[x] = q[r] * nu[r] + (1.0 - 2.0 * q[x]) * nu[x] + q[l] * nu[l];
  }
  return Distribution(std::move(next));
}

inline Distribution rw_evolve(Distribution nu, const RwField& q, std::size_t steps) {
  for (std::size_t t = 0; t < steps; ++t) nu = rw_step(nu, q);
  return nu;
}

// ---------------------------------------------------------------------------
// Quantum walk
// ---------------------------------------------------------------------------

/// Per-vertex coin angle theta(x) in [0, 2*pi).
class CoinField {
 public:
  CoinField() = default;
  explicit CoinField(std::vector<double> theta) : theta_(std::move(theta)) {
    for (std::size_t x = 0; x < theta_.size(); ++x) {
      if (!(theta_[x] >= 0.0 && theta_[x] < 2.0 * std::numbers::pi)) {
        throw std::invalid_argument("theta(" + std::to_string(x) + ") = " +
                                    std::to_string(theta_[x]) + " outside [0, 2*pi)");
      }
    }
  }
  static CoinField homogeneous(std::size_t n, double theta) {
    return CoinField(std::vector<double>(n, theta));
  }

  std::size_t size() const noexcept { return theta_.size(); }
  double operator[](Vertex x) const { return theta_[x]; }
  std::span<const double> values() const noexcept { return theta_; }

 private:
  std::vector<double> theta_;
};

template <class T>
using Matrix3 = std::array<std::array<T, 3>, 3>;

template <class T>
using Amplitude3 = std::array<T, 3>;

using Complex = std::complex<double>;
using CoinMatrix = Matrix3<Complex>;

/// 3x3 coin for angle theta:
///
///   [ -(1+c)/2   s/sqrt2   (1-c)/2 ]
///   [  s/sqrt2     c       s/sqrt2 ]
///   [  (1-c)/2   s/sqrt2  -(1+c)/2 ]
///
/// with c = cos(theta), s = sin(theta). Real orthogonal for every theta;
/// cos(theta) = -1/3 gives the Grover matrix.
template <class T = Complex>
Matrix3<T> coin_matrix(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta) / std::numbers::sqrt2;
  const double d = -(1.0 + c) / 2.0;
  const double e = (1.0 - c) / 2.0;
  return {{{T(d), T(s), T(e)}, {T(s), T(c), T(s)}, {T(e), T(s), T(d)}}};
}

template <class T>
struct CoinParts {
  Matrix3<T> P;  // row |->: anti-clockwise weight
  Matrix3<T> Q;  // row |+>: clockwise weight
  Matrix3<T> R;  // row |O>: stay weight
};

template <class T>
CoinParts<T> coin_split(const Matrix3<T>& c) {
  CoinParts<T> parts{};
  parts.P[0] = c[0];
  parts.R[1] = c[1];
  parts.Q[2] = c[2];
  return parts;
}

/// Walker superposition: one 3-component amplitude vector per vertex.
template <class T>
class BasicQwState {
 public:
  BasicQwState() = default;
  explicit BasicQwState(std::vector<Amplitude3<T>> psi) : psi_(std::move(psi)) {}

  // |s> (x) |O>
  static BasicQwState localized(Vertex s, std::size_t n) {
    require_cycle_size(n);
    require_vertex(s, n);
    std::vector<Amplitude3<T>> psi(n, Amplitude3<T>{});
    psi[s][1] = T(1);
    return BasicQwState(std::move(psi));
  }

  std::size_t size() const noexcept { return psi_.size(); }
  const Amplitude3<T>& operator[](Vertex x) const { return psi_[x]; }
  Amplitude3<T>& operator[](Vertex x) { return psi_[x]; }
  std::span<const Amplitude3<T>> amplitudes() const noexcept { return psi_; }

  double norm_squared() const noexcept {
    double sum = 0.0;
    for (const auto& v : psi_) sum += std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]);
    return sum;
  }

 private:
  std::vector<Amplitude3<T>> psi_;
};

using QwState = BasicQwState<Complex>;

inline QwState qw_initial_state(Vertex s, std::size_t n) { return QwState::localized(s, n); }

template <class T>
std::vector<Matrix3<T>> coin_matrices(const CoinField& coins) {
  std::vector<Matrix3<T>> out;
  out.reserve(coins.size());
  for (double theta : coins.values()) out.push_back(coin_matrix<T>(theta));
  return out;
}

namespace detail {

template <class T>
T row_dot(const std::array<T, 3>& row, const Amplitude3<T>& v) {
  return row[0] * v[0] + row[1] * v[1] + row[2] * v[2];
}

}  // namespace detail

/// One application of U = S C via the local recurrence
///   psi'(x) = P(x+1) psi(x+1) + R(x) psi(x) + Q(x-1) psi(x-1).
/// Only row |-> of P, row |O> of R and row |+> of Q are nonzero, so each
/// output component is a single row-vector product.
template <class T>
BasicQwState<T> qw_step(const BasicQwState<T>& state, std::span<const Matrix3<T>> coins) {
  const std::size_t n = state.size();
  if (coins.size() != n) {
    throw std::invalid_argument("qw_step: state has " + std::to_string(n) +
                                " vertices but coin field has " + std::to_string(coins.size()));
  }
  std::vector<Amplitude3<T>> next(n);
  for (Vertex x = 0; x < n; ++x) {
    const Vertex r = clockwise(x, n);
    const Vertex l = anticlockwise(x, n);
    next[x][0] = detail::row_dot(coins[r][0], state[r]);
    next[x][1] = detail::row_dot(coins[x][1], state[x]);
    next[x][2] = detail::row_dot(coins[l][2], state[l]);
  }
  return BasicQwState<T>(std::move(next));
}

template <class T>
BasicQwState<T> qw_step(const BasicQwState<T>& state, const CoinField& coins) {
  const auto mats = coin_matrices<T>(coins);
  return qw_step(state, std::span<const Matrix3<T>>(mats));
}

template <class T>
BasicQwState<T> qw_evolve(BasicQwState<T> state, const CoinField& coins, std::size_t steps) {
  const auto mats = coin_matrices<T>(coins);
  for (std::size_t t = 0; t < steps; ++t) state = qw_step(state, std::span<const Matrix3<T>>(mats));
  return state;
}

/// Born rule: mu(x) = |psi(x)|^2.
template <class T>
Distribution measurement_distribution(const BasicQwState<T>& state) {
  std::vector<double> mu(state.size());
  for (Vertex x = 0; x < state.size(); ++x) {
    const auto& v = state[x];
    mu[x] = std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]);
  }
  return Distribution(std::move(mu));
}

// ---------------------------------------------------------------------------
// Sampling and spread
// ---------------------------------------------------------------------------

/// Inverse-CDF lookup for a given uniform variate u in [0, 1). Scans vertices
/// in ascending order; rounding residue falls to the last vertex carrying
/// positive mass.
inline Vertex sample_with_variate(const Distribution& dist, double u) {
  double cumulative = 0.0;
  Vertex last_positive = 0;
  for (Vertex x = 0; x < dist.size(); ++x) {
    if (dist[x] <= 0.0) continue;
    last_positive = x;
    cumulative += dist[x];
    if (u < cumulative) return x;
  }
  return last_positive;
}

inline Vertex sample_position(const Distribution& dist, RandomStream& rng) {
  return sample_with_variate(dist, rng.uniform());
}

/// Standard deviation of the signed displacement from s. The support must
/// stay clear of the vertices farthest from s, where the displacement would
/// be ambiguous.
inline double displacement_stddev(const Distribution& dist, Vertex s) {
  const std::size_t n = dist.size();
  require_vertex(s, n);
  const auto far = static_cast<long>(n / 2);
  double mean = 0.0;
  for (Vertex x = 0; x < n; ++x) {
    if (dist[x] == 0.0) continue;
    const long d = signed_displacement(s, x, n);
    if (std::labs(d) >= far) {
      throw std::domain_error("displacement_stddev: support reaches the antipode of vertex " +
                              std::to_string(s));
    }
    mean += dist[x] * static_cast<double>(d);
  }
  double var = 0.0;
  for (Vertex x = 0; x < n; ++x) {
    if (dist[x] == 0.0) continue;
    const double dev = static_cast<double>(signed_displacement(s, x, n)) - mean;
    var += dist[x] * dev * dev;
  }
  return std::sqrt(var);
}

}  // namespace qwbandit
