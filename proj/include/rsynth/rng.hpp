#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace rsynth {

/// Seeded random source. Streams for parallel work are derived from a master
/// seed and a pair of coordinates, so results never depend on scheduling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng derive(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
    std::uint64_t x = splitmix(master);
    x = splitmix(x ^ splitmix(a + 0x632be59bd9b4e019ULL));
    x = splitmix(x ^ splitmix(b + 0x85157af5ULL));
    return Rng(x);
  }

  /// Uniform in [0, n). n must be positive.
  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_); }
  /// Uniform in [0, 1).
  double uniform01() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  bool coin(double p) { return uniform01() < p; }

  std::mt19937_64& engine() { return engine_; }

 private:
  static std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace rsynth
