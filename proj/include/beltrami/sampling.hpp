#pragma once

#include <cstdint>
#include <random>

#include "beltrami/geometry.hpp"

namespace beltrami {

/// 64-bit linear congruential engine (Knuth's MMIX constants).
using Lcg64 = std::linear_congruential_engine<std::uint64_t, 6364136223846793005ULL,
                                              1442695040888963407ULL, 0ULL>;

/// Reproducible point source. Values are derived from the raw engine output
/// only, so a given seed yields the same points on every platform.
class PointSampler {
 public:
  explicit PointSampler(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  /// Uniform in [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Rejection sampling from the bounding box of the annulus; the returned
  /// point keeps distance `margin` from both boundary tori.
  CartesianPoint annulus_point(double margin = kScanMargin) {
    for (;;) {
      const Vec3d xyz{uniform(-3.5, 3.5), uniform(-3.5, 3.5), uniform(-1.5, 1.5)};
      if (in_annulus_interior(xyz, margin)) return CartesianPoint(xyz);
    }
  }

  /// Uniform angles and t in (1/2 + margin, 3/2 - margin).
  ToroidalPoint toroidal_point(double margin = kScanMargin) {
    const double a = uniform(-kPi, kPi);
    const double c = uniform(-kPi, kPi);
    const double t = uniform(kInnerRadius + margin, kOuterRadius - margin);
    return {a, c, t};
  }

 private:
  Lcg64 engine_;
  std::uint64_t seed_;
};

}  // namespace beltrami
