#ifndef HYPERDET_CONFIG_HPP
#define HYPERDET_CONFIG_HPP

namespace hyperdet {

/// Numerical thresholds used across the pipeline. All values are relative
/// unless noted. Defaults sit one order of magnitude above the refinement
/// floor so that well-conditioned instances pass with margin.
struct Tolerances {
  double real_point = 1e-8;       // |Im| threshold for calling a projective point real
  double pair = 1e-8;             // conjugate-matching distance
  double separation = 1e-7;       // minimum pairwise chordal distance between points
  double jacobian = 1e-8;         // minimum scaled Jacobian singular value
  double newton_target = 1e-12;   // refinement residual target (relative to evaluation scale)
  double nullspace = 1e-9;        // singular values below nullspace * sigma_max count as zero
  double residual = 1e-6;         // least-squares residual gate, relative to |b|
  double span_residual = 1e-7;    // projection residual gate for extend_to_basis
  double poly_real = 1e-12;       // coefficient |Im| threshold for calling a polynomial real
  double rank = 1e-10;            // rank cutoff for least squares, relative to sigma_max
  double hyperbolicity = 1e-7;    // |Im root| <= hyperbolicity * (1 + |root|)
  double interlacing_slack = 1e-8;  // slack factor on the root span
};

}  // namespace hyperdet

#endif
