#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace qwbandit {

// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Per-run seed derived from the master seed and the run index:
//   seed_k = splitmix64(master ^ splitmix64(k))
// A run can be replayed in isolation from (master, k) alone.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return splitmix64(master ^ splitmix64(index));
}

// Seed of the i-th cell of a parameter sweep. Uses a separate domain tag so
// cell seeds never coincide with run seeds of the same master.
constexpr std::uint64_t derive_cell_seed(std::uint64_t master, std::uint64_t cell) noexcept {
  return splitmix64(splitmix64(master ^ 0x5357454550ULL) + cell);
}

/// Uniform random stream backed by a 64-bit Mersenne Twister.
///
/// Every draw goes through `uniform()`, which consumes exactly one engine
/// output and returns a double in [0, 1) with 53 random bits. The number of
/// variates consumed so far is tracked so replay tests can account for them.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  double uniform() {
    ++consumed_;
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // floor(u * n) for one uniform variate u; n > 0.
  std::size_t uniform_index(std::size_t n) {
    auto i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return i < n ? i : n - 1;
  }

  std::uint64_t consumed() const noexcept { return consumed_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t consumed_ = 0;
};

}  // namespace qwbandit
