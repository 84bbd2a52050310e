#pragma once

#include <cstdint>
#include <random>

namespace carpool {

/// splitmix64 finalizer; used to derive independent stream seeds from one
/// user-facing seed.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of the arrival stream for a run seed.
constexpr std::uint64_t arrival_seed(std::uint64_t seed) { return mix_seed(seed ^ 0x6172726976616c73ULL); }
/// Seed of the algorithm's coin stream for a run seed.
constexpr std::uint64_t coin_seed(std::uint64_t seed) { return mix_seed(seed ^ 0x636f696e73636f69ULL); }

/// The randomness an online algorithm consumes: fair bits for tie-breaks and
/// random signs, and uniform reals for the beta coin.
class Coins {
 public:
  explicit Coins(std::uint64_t seed) : engine_(seed) {}

  /// One fair bit, the top bit of a single engine draw.
  bool bit() { return (engine_() >> 63) != 0; }

  /// Uniform in [0, 1) from a single engine draw (53-bit mantissa).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace carpool
