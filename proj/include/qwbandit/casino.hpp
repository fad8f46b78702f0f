#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qwbandit/random.hpp"
#include "qwbandit/walk.hpp"

namespace qwbandit {

/// Bernoulli arms, one slot machine per cycle vertex.
class Casino {
 public:
  explicit Casino(std::vector<double> p) : p_(std::move(p)) {
    require_cycle_size(p_.size());
    for (std::size_t x = 0; x < p_.size(); ++x) {
      if (!(p_[x] >= 0.0 && p_[x] <= 1.0)) {
        throw std::invalid_argument("p(" + std::to_string(x) + ") = " + std::to_string(p_[x]) +
                                    " outside [0, 1]");
      }
    }
  }

  std::size_t size() const noexcept { return p_.size(); }
  double operator[](Vertex x) const { return p_[x]; }
  const std::vector<double>& probabilities() const noexcept { return p_; }

 private:
  std::vector<double> p_;
};

// 32 arms: 0.9 at 14, 0.1 at 15, otherwise 0.7 on even and 0.5 on odd vertices.
inline Casino paper_casino() {
  std::vector<double> p(32);
  for (Vertex x = 0; x < p.size(); ++x) p[x] = x % 2 == 0 ? 0.7 : 0.5;
  p[14] = 0.9;
  p[15] = 0.1;
  return Casino(std::move(p));
}

// Smallest index attaining max p.
inline Vertex best_arm(const Casino& casino) {
  Vertex best = 0;
  for (Vertex x = 1; x < casino.size(); ++x)
    if (casino[x] > casino[best]) best = x;
  return best;
}

// 1 iff u < p(x), one variate per draw.
inline int draw_reward(const Casino& casino, Vertex x, RandomStream& rng) {
  require_vertex(x, casino.size());
  return rng.uniform() < casino[x] ? 1 : 0;
}

}  // namespace qwbandit
