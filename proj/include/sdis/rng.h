#pragma once

/// Seeded random number generation with reproducible sub-streams.
///
/// Sub-stream rule: the stream with id `s` below a parent seed `p` is seeded
/// with `mix64(p + (s + 1) * 0x9E3779B97F4A7C15)`, where `mix64` is the
/// SplitMix64 finalizer. For a fixed parent the map s -> child seed is a
/// bijection on 64-bit integers (odd multiplier, modular add, invertible
/// finalizer), so sibling streams never share a seed. Nested streams
/// (run -> level -> chain) apply the rule repeatedly.

#include <cstddef>
#include <cstdint>
#include <random>

namespace sdis {

/// SplitMix64 finalizer; a bijection on 64-bit integers.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed of sub-stream `stream` below `parent`.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t stream) noexcept;

class Rng {
 public:
  using Engine = std::mt19937_64;

  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const noexcept { return seed_; }

  /// Independent generator for sub-stream `stream`. Depends only on seed(),
  /// never on how many draws this generator has made.
  Rng substream(std::uint64_t stream) const { return Rng(derive_seed(seed_, stream)); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;
  /// Uniform on the open interval (0, 1).
  double uniform_open() noexcept;
  double normal();
  /// Uniform integer in [0, n).
  std::size_t index(std::size_t n);

  Engine& engine() noexcept { return engine_; }

 private:
  std::uint64_t seed_;
  Engine engine_;
  std::normal_distribution<double> normal_;
};

}  // namespace sdis
