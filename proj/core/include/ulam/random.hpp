#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "ulam/permutation.hpp"

namespace ulam {

/// Seeded generator with draws defined on raw 64-bit words only, so streams
/// are identical across standard library implementations (std::*_distribution
/// is not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, n), n > 0, by rejection.
  std::uint64_t uniform_index(std::uint64_t n);

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return p >= 1.0 || uniform01() < p; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[uniform_index(i)]);
    }
  }

  std::string state() const;
  void set_state(const std::string& text);

  friend bool operator==(const Rng&, const Rng&) = default;

 private:
  std::mt19937_64 engine_;
};

/// Derives an independent seed for a named sub-component.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) noexcept;

Permutation random_permutation(std::size_t d, Rng& rng);

/// Removes one uniformly chosen symbol and reinserts it at a uniformly chosen
/// different position. A no-op for d = 1.
Permutation apply_random_move(const Permutation& p, Rng& rng);

}  // namespace ulam
