#pragma once

#include <cstdint>
#include <random>

namespace mdplab {

// Seeded random stream. The engine (mt19937_64) is fully specified by the
// standard, and the distribution transforms are written out below, so a given
// seed yields the same draw sequence on every platform and standard library.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53-bit resolution.
  double next_uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; consumes exactly two uniforms.
  double next_normal();

  // Gamma(alpha, 1) for alpha > 0, Marsaglia-Tsang squeeze method.
  double next_gamma(double alpha);

  // Uniform index in {0, ..., n - 1}; consumes exactly one uniform.
  int next_index(int n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace mdplab
