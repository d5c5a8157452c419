#ifndef HYPERDET_INTERSECT_HPP
#define HYPERDET_INTERSECT_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "hyperdet/config.hpp"
#include "hyperdet/poly.hpp"

namespace hyperdet {

/// Point of complex projective 2-space in canonical normalization: the
/// coordinate of largest modulus equals 1 exactly, ties broken by earliest
/// index.
class ProjectivePoint {
 public:
  explicit ProjectivePoint(const Eigen::Vector3cd& coords);

  const Eigen::Vector3cd& coords() const { return coords_; }
  Complex operator[](int k) const { return coords_(k); }

  bool is_real(double tol = 1e-8) const;

  /// Canonical form of the coordinatewise conjugate.
  ProjectivePoint conjugate() const;

 private:
  Eigen::Vector3cd coords_;
};

/// Chordal distance on P^2: sin of the angle between the lines, in [0, 1].
double chordal_distance(const ProjectivePoint& a, const ProjectivePoint& b);

struct IntersectOptions {
  std::uint64_t seed = 0;
  int max_rotation_attempts = 5;
  Tolerances tol;
};

struct IntersectDiagnostics {
  double min_pairwise_distance = 0.0;
  double max_newton_residual = 0.0;
  double min_jacobian_sv = 0.0;
  Direction direction_used;
  int rotation_attempts = 0;
  bool user_supplied = false;
};

/// Per-point transversality report; pure observation, the caller decides.
struct TransversalityReport {
  double min_pairwise_distance = 0.0;
  std::vector<double> jacobian_smallest_sv;
  std::vector<bool> real_flags;
  double min_jacobian_sv = 0.0;
  bool any_real = false;
  bool separation_ok = false;
  bool jacobians_ok = false;
  bool pass = false;
};

/// The d(d-1) intersection points split into conjugate halves.
struct IntersectionSet {
  std::vector<ProjectivePoint> all_points;
  std::vector<int> S;
  std::vector<int> conj_pairing;
  IntersectDiagnostics diagnostics;
};

/// Computes the d(d-1) transverse intersection points of V(f) and V(g) by
/// resultant elimination after a seeded random orthogonal coordinate change,
/// refines each with Newton until the relative residual stagnates at machine
/// level (always <= 1e-12), and returns them canonically normalized and
/// sorted. Throws TransversalityFailure when fewer than d(d-1) distinct
/// points survive or a Jacobian is near-singular.
std::vector<ProjectivePoint> intersect_curves(const HomogeneousPoly& f, const HomogeneousPoly& g,
                                              const IntersectOptions& opts = {},
                                              IntersectDiagnostics* diag_out = nullptr);

TransversalityReport check_transverse(const HomogeneousPoly& f, const HomogeneousPoly& g,
                                      const std::vector<ProjectivePoint>& points,
                                      const Tolerances& tol = {});

/// Splits a conjugation-closed point list into S and its conjugate image.
/// S takes from each pair the point whose first coordinate with |Im| >
/// real_point tolerance has positive imaginary part. With allow_self_paired,
/// real points pair with themselves and land in S once (used by the
/// user-supplied path for singular curves); otherwise they raise
/// PairingFailure.
IntersectionSet split_conjugate(const std::vector<ProjectivePoint>& points,
                                const Tolerances& tol = {}, bool allow_self_paired = false);

/// e' = e + seeded random perturbation of the given relative magnitude,
/// rescaled back to |e|. Deterministic per seed; magnitude 0 returns e.
Direction perturb_direction(const Direction& e, std::uint64_t seed, double magnitude = 1e-3);

/// Newton residual max(|f(p)|, |g(p)|) relative to the evaluation scale.
double newton_residual(const HomogeneousPoly& f, const HomogeneousPoly& g,
                       const ProjectivePoint& p);

}  // namespace hyperdet

#endif
