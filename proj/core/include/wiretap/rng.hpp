#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace wiretap {

// Reproducible random stream. The seed -> output mapping is part of the
// interface and must not change between releases:
//
//   * engine: std::mt19937_64 seeded with the 64-bit seed value,
//   * uniform(): (next_u64() >> 11) * 2^-53, one engine draw, range [0, 1),
//   * complex_normal(): polar transform from two consecutive uniforms u1, u2:
//       z = sqrt(-log(1 - u1)) * (cos(2*pi*u2) + i*sin(2*pi*u2)),
//     circularly-symmetric CN(0, 1) (real/imag parts each N(0, 1/2)),
//   * uniform_int(bound): rejection sampling on masked engine draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  std::complex<double> complex_normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-std::log(1.0 - u1));
    const double phi = 2.0 * M_PI * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
  }

  /// Uniform integer in [0, bound); bound must be >= 1.
  std::uint64_t uniform_int(std::uint64_t bound) {
    const std::uint64_t mask = std::bit_ceil(bound) - 1;
    std::uint64_t v;
    do {
      v = next_u64() & mask;
    } while (v >= bound);
    return v;
  }

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer, used to decorrelate derived stream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed of the index-th substream of a master seed. Substreams are
/// statistically independent and may be consumed in parallel.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

}  // namespace wiretap
