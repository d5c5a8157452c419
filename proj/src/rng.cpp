#include "hyperdet/rng.hpp"

#include <cmath>
#include <numbers>

namespace hyperdet {

std::uint64_t Rng::next_u64() {
  // SplitMix64 (Steele, Lea, Flood 2014).
  state_ += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  // 53 mantissa bits; shifted into (0,1) so log() below is always finite.
  double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  if (u <= 0.0) u = 0x1.0p-53;
  return u;
}

double Rng::gaussian() {
  if (has_cached_gaussian_) {
    has_cached_gaussian_ = false;
    return cached_gaussian_;
  }
  double u1 = uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double angle = 2.0 * std::numbers::pi * u2;
  cached_gaussian_ = r * std::sin(angle);
  has_cached_gaussian_ = true;
  return r * std::cos(angle);
}

Eigen::Vector3d Rng::gaussian_vector3() {
  Eigen::Vector3d v;
  v << gaussian(), gaussian(), gaussian();
  return v;
}

Eigen::Vector3d Rng::unit_sphere_point() {
  Eigen::Vector3d v = gaussian_vector3();
  double n = v.norm();
  while (n < 1e-12) {
    v = gaussian_vector3();
    n = v.norm();
  }
  return v / n;
}

Eigen::Matrix3d Rng::random_orthogonal3() {
  Eigen::Matrix3d g;
  for (int c = 0; c < 3; ++c) g.col(c) = gaussian_vector3();
  Eigen::Matrix3d q;
  for (int c = 0; c < 3; ++c) {
    Eigen::Vector3d v = g.col(c);
    for (int k = 0; k < c; ++k) v -= q.col(k).dot(g.col(c)) * q.col(k);
    double n = v.norm();
    if (n < 1e-10) return random_orthogonal3();  // retry on a degenerate draw
    q.col(c) = v / n;
    // Sign fixed by the leading entry so the stream determines the matrix.
    if (q(c, c) < 0.0) q.col(c) = -q.col(c);
  }
  return q;
}

std::uint64_t Rng::derive(std::uint64_t seed, std::uint64_t tag) {
  Rng mixer(seed ^ (0xA0761D6478BD642Full + tag * 0xE7037ED1A0B428DBull));
  return mixer.next_u64();
}

}  // namespace hyperdet
