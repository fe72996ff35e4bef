#pragma once

#include <cstdint>
#include <random>

namespace jetorbit {

/// Deterministic uniform sampler.  The bit path is fixed (mt19937_64 plus an
/// explicit 53-bit mantissa map), so a given seed produces the same stream on
/// every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform draw in [lo, hi).
  double uniform(double lo, double hi) {
    const double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace jetorbit
