#ifndef HYPERDET_RNG_HPP
#define HYPERDET_RNG_HPP

#include <cstdint>

#include <Eigen/Dense>

namespace hyperdet {

/// Seedable generator used everywhere randomness is needed so that runs are
/// reproducible from a single u64 seed. Uniform draws come from SplitMix64;
/// Gaussian draws from Box-Muller over those uniforms. No standard-library
/// distributions are involved, so identical seeds give identical streams on
/// every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();

  /// Uniform double in the open interval (0, 1).
  double uniform();

  /// Standard normal draw (Box-Muller, pairwise cached).
  double gaussian();

  /// Normal draw with the given mean and standard deviation.
  double gaussian(double mean, double stddev) { return mean + stddev * gaussian(); }

  Eigen::Vector3d gaussian_vector3();

  /// Uniformly distributed point on the unit sphere of R^3.
  Eigen::Vector3d unit_sphere_point();

  /// Random orthogonal 3x3 matrix (Gram-Schmidt of a Gaussian matrix with a
  /// fixed sign convention).
  Eigen::Matrix3d random_orthogonal3();

  /// Derives an independent child seed; used to give pipeline stages their
  /// own streams without correlating them.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t tag);

 private:
  std::uint64_t state_;
  double cached_gaussian_ = 0.0;
  bool has_cached_gaussian_ = false;
};

}  // namespace hyperdet

#endif
