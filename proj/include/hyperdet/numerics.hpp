#ifndef HYPERDET_NUMERICS_HPP
#define HYPERDET_NUMERICS_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "hyperdet/errors.hpp"

namespace hyperdet {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

struct LeastSquaresSolution {
  Eigen::VectorXd x;
  double residual_norm = 0.0;
  double smallest_singular_value = 0.0;
  double largest_singular_value = 0.0;
  int rank = 0;
};

/// All n roots (with multiplicity) of c[0] + c[1] t + ... + c[n] t^n via
/// companion-matrix eigenvalues plus one Newton polish step. Requires
/// |c[n]| > 1e-13 * max|c|.
std::vector<std::complex<double>> univariate_roots(const std::vector<std::complex<double>>& coeffs);

/// Orthonormal basis of the numerical right nullspace: right singular vectors
/// whose singular values are <= tol * sigma_max.
std::vector<ComplexVector> nullspace(const ComplexMatrix& A, double tol);

/// SVD least squares for a real overdetermined system (m >= n). Rank is the
/// number of singular values above rank_tol * sigma_max; directions below the
/// cutoff are excluded from the pseudo-inverse.
LeastSquaresSolution least_squares(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                   double rank_tol = 1e-10);

/// Determinant via pivoted LU.
std::complex<double> det_numeric(const ComplexMatrix& A);

struct DefinitenessResult {
  bool positive_definite = false;
  double min_eigenvalue = 0.0;
};

/// Checks H is Hermitian within herm_tol (relative, entrywise), symmetrizes,
/// and reports the smallest eigenvalue.
DefinitenessResult is_positive_definite(const ComplexMatrix& H, double herm_tol = 1e-12);

}  // namespace hyperdet

#endif
