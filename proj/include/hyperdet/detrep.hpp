#ifndef HYPERDET_DETREP_HPP
#define HYPERDET_DETREP_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "hyperdet/config.hpp"
#include "hyperdet/intersect.hpp"
#include "hyperdet/numerics.hpp"
#include "hyperdet/pencil.hpp"
#include "hyperdet/poly.hpp"

namespace hyperdet {

/// Basis (a11, ..., a1d) of the degree-(d-1) forms vanishing on S, with
/// entries[0] equal to the interlacer.
struct VanishingBasis {
  int d = 0;
  std::vector<HomogeneousPoly> entries;
};

/// Realified affine-linear system in the Hermitian unknowns: the 3d^2 real
/// Hermitian parameters; each complex equation contributes a (real, imag)
/// row pair, first-block rows before second-block rows.
struct AssembledSystem {
  int d = 0;
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  int complex_equations = 0;  // rows of A = 2 * complex_equations
  int unknowns = 0;           // 3 d^2
};

struct RepresentationDiagnostics {
  IntersectDiagnostics intersect;
  int retries = 0;
  bool user_supplied_points = false;
  bool user_supplied_basis = false;
  double min_pencil_eigenvalue = 0.0;
  double total_seconds = 0.0;
  double intersection_seconds = 0.0;
};

struct Representation {
  HermitianPencil pencil;
  double c = 0.0;
  LeastSquaresSolution lsq;
  VanishingBasis basis;
  Direction direction_used;
  RepresentationDiagnostics diagnostics;
};

struct RepresentOptions {
  std::uint64_t seed = 0;
  int max_retries = 3;
  double perturb_magnitude = 1e-3;
  int hyperbolicity_trials = 50;
  std::optional<HomogeneousPoly> interlacer;
  std::optional<IntersectionSet> points;  // user-supplied S (singular inputs)
  std::optional<std::vector<HomogeneousPoly>> basis;
  Tolerances tol;
};

/// Orthonormal basis of the degree-(d-1) forms vanishing on the canonical
/// representatives of S. Dimension must come out exactly d.
std::vector<HomogeneousPoly> vanishing_space(const std::vector<ProjectivePoint>& S, int d,
                                             const Tolerances& tol = {});

/// Extends the interlacer to a basis of the vanishing space: entries[0] = g
/// exactly, the rest orthogonalized against g with the smallest remainder
/// dropped and the leading coefficient of each normalized to 1.
VanishingBasis extend_to_basis(const HomogeneousPoly& g, const std::vector<HomogeneousPoly>& space,
                               const Tolerances& tol = {});

/// Builds the realified linear system of a (xM1+yM2+zM3) = (f, 0, ..., 0) and
/// (xM1+yM2+zM3) conj(a)^T = (f, 0, ..., 0)^T, and checks the second block is
/// the entrywise conjugate of the first.
AssembledSystem assemble_system(const VanishingBasis& a, const HomogeneousPoly& f);

/// Least-squares solution rebuilt as an exactly Hermitian pencil. Throws
/// RankDeficient when rank < 3d^2 and LargeResidual when the residual exceeds
/// its gate.
std::pair<HermitianPencil, LeastSquaresSolution> solve_system(const AssembledSystem& system,
                                                              const Tolerances& tol = {});

/// c = f(e) / det(pencil at e); must be positive.
double scale_constant(const HermitianPencil& pencil, const HomogeneousPoly& f, const Direction& e);

/// Scales the pencil by c^(1/d) so its determinant matches f directly.
HermitianPencil normalize_representation(const Representation& rep);

/// Full pipeline: hyperbolicity gate, intersection (with perturb-and-retry),
/// conjugate split, vanishing basis, system solve, scale constant and final
/// definiteness check.
Representation represent(const HomogeneousPoly& f, const Direction& e,
                         const RepresentOptions& opts = {});

}  // namespace hyperdet

#endif
