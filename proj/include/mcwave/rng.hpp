#pragma once

#include <cmath>
#include <cstdint>

#include "mcwave/types.hpp"

namespace mcwave {

/// Deterministic random stream (xoshiro256++ seeded through splitmix64).
/// Streams derived from the same (seed, stream) pair are identical on every
/// platform, which is what makes parallel Monte-Carlo schedules reproducible:
/// each trial owns the stream (seed, trial_index) regardless of which thread
/// runs it.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
    std::uint64_t x = seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
    for (auto& w : state_) w = splitmix64(x);
    have_spare_ = false;
  }

  /// Child stream, independent of this one for practical purposes.
  Rng fork(std::uint64_t stream) const {
    return Rng(state_[0] ^ state_[2], stream);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform double in (0, 1].
  double uniform01() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  std::uint64_t below(std::uint64_t bound) { return next_u64() % bound; }

  bool bit() { return (next_u64() >> 63) != 0; }

  /// Standard normal via Box-Muller (second value cached).
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform01()));
    const double phi = 2.0 * M_PI * uniform01();
    spare_ = r * std::sin(phi);
    have_spare_ = true;
    return r * std::cos(phi);
  }

  /// Circular complex Gaussian with unit total variance (1/2 per dimension).
  cplx complex_gaussian() {
    const double r = std::sqrt(-std::log(uniform01()));
    const double phi = 2.0 * M_PI * uniform01();
    return {r * std::cos(phi), r * std::sin(phi)};
  }

 private:
  static std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  static std::uint64_t rotl(std::uint64_t v, int k) {
    return (v << k) | (v >> (64 - k));
  }

  std::uint64_t state_[4];
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace mcwave
