#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace kura {

/// Deterministic random stream with pinned output mapping. std::mt19937_64
/// itself is fully specified, but the <random> distributions are not, so
/// sampling goes through fixed bit-level mappings instead: identical seeds
/// give identical streams on every platform and at every thread count.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1), 53-bit resolution.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform angle in [0, 2pi).
  double next_angle() { return next_unit() * 2.0 * std::numbers::pi; }

  /// Standard normal via Box-Muller; pairs are cached.
  double next_normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = next_unit();
    while (u1 <= 0.0) u1 = next_unit();
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    cached_ = r * std::sin(a);
    have_cached_ = true;
    return r * std::cos(a);
  }

 private:
  std::uint64_t state_;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

inline std::uint64_t mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Independent substream for a (seed, lane) tuple. Jobs seeded this way can
/// run in any order or on any worker without changing their draws.
inline Rng substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                     std::uint64_t c = 0) {
  std::uint64_t s = mix64(seed ^ 0x2545f4914f6cdd1dull);
  s = mix64(s ^ (a + 0x9e3779b97f4a7c15ull));
  s = mix64(s ^ (b + 0xc2b2ae3d27d4eb4full));
  s = mix64(s ^ (c + 0x165667b19e3779f9ull));
  return Rng(s);
}

}  // namespace kura
