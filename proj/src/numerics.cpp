#include "hyperdet/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace hyperdet {

namespace {

using Complex = std::complex<double>;

Complex horner(const std::vector<Complex>& coeffs, Complex t) {
  Complex acc(0, 0);
  for (size_t i = coeffs.size(); i-- > 0;) acc = acc * t + coeffs[i];
  return acc;
}

Complex horner_derivative(const std::vector<Complex>& coeffs, Complex t) {
  Complex acc(0, 0);
  for (size_t i = coeffs.size(); i-- > 1;) acc = acc * t + double(i) * coeffs[i];
  return acc;
}

}  // namespace

std::vector<Complex> univariate_roots(const std::vector<Complex>& coeffs) {
  if (coeffs.size() < 2) throw InvalidInput("need degree >= 1 for root finding");
  int n = static_cast<int>(coeffs.size()) - 1;
  double max_mag = 0.0;
  for (const Complex& c : coeffs) max_mag = std::max(max_mag, std::abs(c));
  if (max_mag == 0.0 || std::abs(coeffs[n]) <= 1e-13 * max_mag) {
    throw InvalidInput("vanishing leading coefficient in root finding");
  }
  if (n == 1) return {-coeffs[0] / coeffs[1]};

  ComplexMatrix companion = ComplexMatrix::Zero(n, n);
  for (int r = 1; r < n; ++r) companion(r, r - 1) = Complex(1, 0);
  for (int r = 0; r < n; ++r) companion(r, n - 1) = -coeffs[r] / coeffs[n];

  // Parlett-Reinsch balancing (powers of two); Eigen's complex eigensolver
  // does not balance, and clustered roots lose several digits without it.
  for (int sweep = 0; sweep < 8; ++sweep) {
    bool converged = true;
    for (int k = 0; k < n; ++k) {
      double row = 0.0, col = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == k) continue;
        row += std::abs(companion(k, j));
        col += std::abs(companion(j, k));
      }
      if (row == 0.0 || col == 0.0) continue;
      double scale = 1.0;
      while (col < row / 2.0) {
        col *= 2.0;
        row /= 2.0;
        scale *= 2.0;
      }
      while (col > row * 2.0) {
        col /= 2.0;
        row *= 2.0;
        scale /= 2.0;
      }
      if (scale != 1.0) {
        converged = false;
        companion.row(k) /= scale;
        companion.col(k) *= scale;
      }
    }
    if (converged) break;
  }

  Eigen::ComplexEigenSolver<ComplexMatrix> solver(companion, false);
  if (solver.info() != Eigen::Success) throw InternalError("companion eigensolver failed");

  std::vector<Complex> roots(n);
  for (int r = 0; r < n; ++r) {
    Complex t = solver.eigenvalues()(r);
    // One Newton polish step on the polynomial itself.
    Complex dp = horner_derivative(coeffs, t);
    if (std::abs(dp) > 0.0) {
      Complex step = horner(coeffs, t) / dp;
      if (std::isfinite(step.real()) && std::isfinite(step.imag())) t -= step;
    }
    roots[r] = t;
  }
  std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

std::vector<ComplexVector> nullspace(const ComplexMatrix& A, double tol) {
  Eigen::JacobiSVD<ComplexMatrix> svd(A, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
  std::vector<ComplexVector> basis;
  int small = std::min<int>(A.rows(), A.cols());
  for (int c = 0; c < A.cols(); ++c) {
    double s = c < small ? sigma(c) : 0.0;
    if (s <= tol * sigma_max) basis.push_back(svd.matrixV().col(c));
  }
  return basis;
}

LeastSquaresSolution least_squares(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                   double rank_tol) {
  if (A.rows() < A.cols()) throw DegreeMismatch("least_squares requires rows >= cols");
  if (A.rows() != b.size()) throw DegreeMismatch("least_squares dimension mismatch");
  Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;

  LeastSquaresSolution out;
  out.rank = 0;
  Eigen::VectorXd uty = svd.matrixU().transpose() * b;
  Eigen::VectorXd scaled = Eigen::VectorXd::Zero(sigma.size());
  for (int i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > rank_tol * sigma_max) {
      scaled(i) = uty(i) / sigma(i);
      ++out.rank;
    }
  }
  out.x = svd.matrixV() * scaled;
  out.residual_norm = (A * out.x - b).norm();
  out.smallest_singular_value = sigma.size() > 0 ? sigma(sigma.size() - 1) : 0.0;
  out.largest_singular_value = sigma_max;
  return out;
}

std::complex<double> det_numeric(const ComplexMatrix& A) {
  if (A.rows() != A.cols()) throw DegreeMismatch("determinant requires a square matrix");
  if (A.rows() == 1) return A(0, 0);
  if (A.rows() == 2) return A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
  return Eigen::PartialPivLU<ComplexMatrix>(A).determinant();
}

DefinitenessResult is_positive_definite(const ComplexMatrix& H, double herm_tol) {
  if (H.rows() != H.cols()) throw DegreeMismatch("definiteness requires a square matrix");
  double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
  double asym = (H - H.adjoint()).cwiseAbs().maxCoeff();
  if (asym > herm_tol * scale) {
    throw InvalidInput("matrix is not Hermitian within tolerance (asymmetry " +
                       std::to_string(asym) + ")");
  }
  ComplexMatrix sym = 0.5 * (H + H.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw InternalError("eigenvalue solver failed");
  DefinitenessResult out;
  out.min_eigenvalue = solver.eigenvalues()(0);
  out.positive_definite = out.min_eigenvalue > 0.0;
  return out;
}

}  // namespace hyperdet
