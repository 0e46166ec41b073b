#pragma once

#include "seisdiff/types.hpp"

#include <cmath>
#include <cstdint>

namespace seisdiff {

// Counter-based keyed random stream. Every consumer derives its own stream
// from (seed, key...) so that draws are reproducible regardless of worker
// count or evaluation order. Distributions are generated in-house (Box-Muller
// for normals) instead of through std::*_distribution, whose output is
// implementation-defined.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(mix(seed ^ 0x9e3779b97f4a7c15ull)) {}

  Rng(uint64_t seed, uint64_t k1) : Rng(seed) { key(k1); }
  Rng(uint64_t seed, uint64_t k1, uint64_t k2) : Rng(seed) { key(k1); key(k2); }
  Rng(uint64_t seed, uint64_t k1, uint64_t k2, uint64_t k3) : Rng(seed) { key(k1); key(k2); key(k3); }

  // Folds another key into the stream identity.
  void key(uint64_t k) { state_ = mix(state_ ^ mix(k + 0xbf58476d1ce4e5b9ull)); }

  uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix(state_);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() { return double(next_u64() >> 11) * (1.0 / 9007199254740992.0); }

  // Uniform integer in [0, n).
  uint64_t uniform_index(uint64_t n) { return next_u64() % n; }

  // Standard normal via Box-Muller; the paired draw is cached.
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(a);
    have_cached_ = true;
    return r * std::cos(a);
  }

  // H x W patch of standard-normal draws, filled column by column.
  Patch normal_patch(Eigen::Index h, Eigen::Index w) {
    Patch p(h, w);
    for (Eigen::Index j = 0; j < w; ++j)
      for (Eigen::Index i = 0; i < h; ++i) p(i, j) = float(normal());
    return p;
  }

 private:
  static uint64_t mix(uint64_t z) {  // splitmix64 finalizer
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  uint64_t state_;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace seisdiff
