// rescon - resilient constrained consensus simulator
// Copyright 2026 rescon contributors
// Licensed under Apache 2.0

#ifndef RESCON_RNG_HPP
#define RESCON_RNG_HPP

#include <cmath>
#include <cstdint>

#include <Eigen/Core>

namespace rescon {

/// Self-contained splitmix64 stream. Used instead of <random> engines so that
/// draws are bit-identical across platforms and standard-library versions.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform draw in (0, 1].
  double next_unit() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller (two uniforms per draw, no cached state).
  double next_gaussian() {
    const double u1 = next_unit();
    const double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

 private:
  std::uint64_t state_;
};

/// Order-sensitive key combiner for counter-based streams: the value drawn for
/// a given (seed, round, sender, receiver) tuple never depends on call order.
inline std::uint64_t mix_key(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline Eigen::VectorXd gaussian_vector(SplitMix64& rng, int dim) {
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v[i] = rng.next_gaussian();
  return v;
}

/// Uniform direction on the unit sphere in `dim` dimensions.
inline Eigen::VectorXd unit_sphere_vector(SplitMix64& rng, int dim) {
  for (;;) {
    Eigen::VectorXd v = gaussian_vector(rng, dim);
    const double n = v.norm();
    if (n > 1e-12) return v / n;
  }
}

/// Uniform point in the ball of given radius around `center`.
inline Eigen::VectorXd ball_vector(SplitMix64& rng, const Eigen::VectorXd& center,
                                   double radius) {
  const int dim = static_cast<int>(center.size());
  const double r = radius * std::pow(rng.next_unit(), 1.0 / dim);
  return center + r * unit_sphere_vector(rng, dim);
}

}  // namespace rescon

#endif  // RESCON_RNG_HPP
