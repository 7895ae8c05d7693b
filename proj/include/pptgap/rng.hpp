#pragma once

// Seedable, portable random source.
//
// Engine: std::mt19937_64, whose output sequence is fixed by the standard.
// Seeding: stream s of master seed S is seeded with splitmix64(S ^ splitmix64(s + 1)),
// so each term / sample / worker index draws from its own independent stream and
// the result never depends on how work is scheduled.
// Distributions are implemented here rather than through <random> because the
// standard leaves their algorithms implementation-defined:
//   uniform01  = (next() >> 11) · 2^-53
//   normal     = Box–Muller on two uniform01 draws (cosine branch only)

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace pptgap {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream + 1));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}
  Rng(std::uint64_t seed, std::uint64_t stream) : engine_(stream_seed(seed, stream)) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1].
  double uniform_open01() { return 1.0 - uniform01(); }

  /// Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next() % span);
  }

  double normal() {
    const double u1 = uniform_open01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Standard-normal real and imaginary parts.
  std::complex<double> complex_normal() {
    const double re = normal();
    return {re, normal()};
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace pptgap
