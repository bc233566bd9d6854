#include "sdis/rng.h"

namespace sdis {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr double kTwoPowMinus53 = 1.0 / 9007199254740992.0;
}  // namespace

std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t stream) noexcept {
  return mix64(parent + (stream + 1) * kGolden);
}

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(mix64(seed)) {}

double Rng::uniform() noexcept {
  return static_cast<double>(engine_() >> 11) * kTwoPowMinus53;
}

double Rng::uniform_open() noexcept {
  return (static_cast<double>(engine_() >> 11) + 0.5) * kTwoPowMinus53;
}

double Rng::normal() { return normal_(engine_); }

std::size_t Rng::index(std::size_t n) {
  std::uniform_int_distribution<std::size_t> dist(0, n - 1);
  return dist(engine_);
}

}  // namespace sdis
