#ifndef HYPERDET_VERIFY_HPP
#define HYPERDET_VERIFY_HPP

#include <cstdint>

#include "hyperdet/config.hpp"
#include "hyperdet/pencil.hpp"
#include "hyperdet/poly.hpp"

namespace hyperdet {

struct ErrorReport {
  double abs_error = 0.0;   // max |coeff(f) - c * coeff(det)|
  double rel_error = 0.0;   // abs_error / max |coeff(f)|
  double c_used = 0.0;
  int sample_count = 0;
  double fit_residual = 0.0;  // interpolation least-squares residual
};

struct InterpolatedDeterminant {
  HomogeneousPoly poly;
  double fit_residual = 0.0;
  int sample_count = 0;
};

/// Recovers det(x M1 + y M2 + z M3) as a real homogeneous polynomial by
/// least-squares interpolation at 2 * binom(d+2, 2) seeded random points on
/// the unit sphere of R^3. Resamples up to 3 times if the fit matrix is
/// ill-conditioned.
InterpolatedDeterminant interpolate_determinant(const HermitianPencil& pencil,
                                                std::uint64_t seed = 0);

/// Coefficientwise error metrics of f against c * det(pencil).
ErrorReport representation_error(const HomogeneousPoly& f, const HermitianPencil& pencil, double c,
                                 std::uint64_t seed = 0);

struct HyperbolicityResult {
  bool hyperbolic = false;
  double worst_imaginary = 0.0;  // max |Im root| / (1 + |root|) over all trials
  Eigen::Vector3d witness = Eigen::Vector3d::Zero();
};

/// Samples K random real lines through e and checks all roots of f(te + p)
/// are real within tolerance. A failure is definitive (the witness line is
/// reported); a pass is probabilistic evidence.
HyperbolicityResult hyperbolicity_check(const HomogeneousPoly& f, const Direction& e, int trials = 50,
                                        std::uint64_t seed = 0, const Tolerances& tol = {});

/// Checks the roots of g(te + p) weakly interlace those of f(te + p) on K
/// seeded random lines.
bool interlacing_check(const HomogeneousPoly& f, const HomogeneousPoly& g, const Direction& e,
                       int trials = 50, std::uint64_t seed = 0, const Tolerances& tol = {});

/// Positive-definiteness of the pencil evaluated at e.
DefinitenessResult check_definite(const HermitianPencil& pencil, const Direction& e);

}  // namespace hyperdet

#endif
