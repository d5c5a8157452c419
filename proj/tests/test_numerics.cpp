#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "hyperdet/numerics.hpp"
#include "hyperdet/rng.hpp"

using namespace hyperdet;
using Complex = std::complex<double>;

namespace {

std::vector<Complex> sorted_roots(std::vector<Complex> roots) {
  std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

// Expands prod (t - r_i) to coefficients; the independent oracle for root
// reconstruction.
std::vector<Complex> poly_from_roots(const std::vector<Complex>& roots) {
  std::vector<Complex> coeffs{Complex(1, 0)};
  for (const Complex& r : roots) {
    std::vector<Complex> next(coeffs.size() + 1, Complex(0, 0));
    for (size_t i = 0; i < coeffs.size(); ++i) {
      next[i + 1] += coeffs[i];
      next[i] -= r * coeffs[i];
    }
    coeffs = next;
  }
  return coeffs;
}

}  // namespace

TEST_CASE("univariate_roots on small fixed polynomials") {
  auto r1 = sorted_roots(univariate_roots({Complex(1), Complex(0), Complex(1)}));  // t^2 + 1
  REQUIRE(r1.size() == 2);
  CHECK(std::abs(r1[0] - Complex(0, -1)) < 1e-12);
  CHECK(std::abs(r1[1] - Complex(0, 1)) < 1e-12);

  auto r2 = sorted_roots(univariate_roots({Complex(2), Complex(-3), Complex(1)}));  // t^2 - 3t + 2
  CHECK(std::abs(r2[0] - Complex(1, 0)) < 1e-12);
  CHECK(std::abs(r2[1] - Complex(2, 0)) < 1e-12);

  auto r3 = sorted_roots(univariate_roots({Complex(0), Complex(-1), Complex(0), Complex(1)}));  // t^3 - t
  CHECK(std::abs(r3[0] - Complex(-1, 0)) < 1e-12);
  CHECK(std::abs(r3[1] - Complex(0, 0)) < 1e-12);
  CHECK(std::abs(r3[2] - Complex(1, 0)) < 1e-12);

  CHECK_THROWS_AS(univariate_roots({Complex(1), Complex(1), Complex(0)}), InvalidInput);
}

TEST_CASE("univariate_roots reconstructs random coefficients") {
  Rng rng(101);
  for (int trial = 0; trial < 6; ++trial) {
    int degree = 5 + 5 * trial;  // up to 30
    std::vector<Complex> roots(degree);
    for (auto& r : roots) {
      double angle = 2 * 3.14159265358979 * rng.uniform();
      double radius = std::sqrt(rng.uniform());
      r = radius * Complex(std::cos(angle), std::sin(angle));
    }
    std::vector<Complex> coeffs = poly_from_roots(roots);
    std::vector<Complex> found = univariate_roots(coeffs);
    std::vector<Complex> rebuilt = poly_from_roots(found);
    double max_coeff = 0.0, max_err = 0.0;
    for (size_t i = 0; i < coeffs.size(); ++i) {
      max_coeff = std::max(max_coeff, std::abs(coeffs[i]));
      max_err = std::max(max_err, std::abs(coeffs[i] - rebuilt[i]));
    }
    CHECK(max_err <= 1e-8 * max_coeff);
  }
}

TEST_CASE("nullspace on fixed matrices") {
  ComplexMatrix a(1, 2);
  a << Complex(1, 0), Complex(0, 1);
  auto basis = nullspace(a, 1e-10);
  REQUIRE(basis.size() == 1);
  CHECK(std::abs(basis[0].norm() - 1.0) < 1e-12);
  CHECK((a * basis[0]).norm() < 1e-12);
  // Spans (-i, 1)/sqrt(2) up to phase: check proportionality.
  Complex ratio = basis[0](1) / basis[0](0);
  CHECK(std::abs(ratio - Complex(0, 1)) < 1e-12);  // (−i)·i = 1, so v1/v0 = 1/(−i) = i

  ComplexMatrix row(1, 3);
  row << Complex(0, 0), Complex(1, 0), Complex(0, 1);
  auto basis2 = nullspace(row, 1e-10);
  REQUIRE(basis2.size() == 2);
  for (const auto& v : basis2) CHECK((row * v).norm() < 1e-12);
  // The space contains (1,0,0) and (0,-i,1)/sqrt(2): check both project fully.
  Eigen::Vector3cd e1(Complex(1), Complex(0), Complex(0));
  Eigen::Vector3cd w(Complex(0), Complex(0, -1) / std::sqrt(2.0), Complex(1) / std::sqrt(2.0));
  for (const Eigen::Vector3cd& target : {e1, w}) {
    Complex c0 = basis2[0].dot(target);
    Complex c1 = basis2[1].dot(target);
    Eigen::VectorXcd proj = basis2[0] * c0 + basis2[1] * c1;
    CHECK((proj - target).norm() < 1e-12);
  }
  // Orthonormality.
  CHECK(std::abs(basis2[0].dot(basis2[1])) < 1e-12);

  CHECK(nullspace(ComplexMatrix::Identity(3, 3), 1e-10).empty());
}

TEST_CASE("nullspace is orthogonal to the row space") {
  Rng rng(55);
  for (int trial = 0; trial < 5; ++trial) {
    int rows = 3 + trial, cols = 6 + trial;
    ComplexMatrix A(rows, cols);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) A(r, c) = Complex(rng.gaussian(), rng.gaussian());
    double tol = 1e-9;
    auto basis = nullspace(A, tol);
    CHECK(basis.size() == static_cast<size_t>(cols - rows));
    Eigen::JacobiSVD<ComplexMatrix> svd(A);
    double sigma_max = svd.singularValues()(0);
    for (const auto& v : basis) CHECK((A * v).norm() <= 10 * tol * sigma_max);
  }
}

TEST_CASE("least_squares on fixed systems") {
  Eigen::MatrixXd id = Eigen::MatrixXd::Identity(4, 4);
  Eigen::VectorXd b(4);
  b << 1, -2, 3, 0.5;
  auto sol = least_squares(id, b);
  CHECK((sol.x - b).norm() < 1e-14);
  CHECK(sol.residual_norm < 1e-14);
  CHECK(sol.rank == 4);

  // Stacking a square invertible system twice keeps the minimizer.
  Eigen::MatrixXd square(2, 2);
  square << 2, 1, 1, 3;
  Eigen::VectorXd rhs(2);
  rhs << 1, 2;
  Eigen::VectorXd exact = square.colPivHouseholderQr().solve(rhs);
  Eigen::MatrixXd stacked(4, 2);
  stacked << square, square;
  Eigen::VectorXd rhs2(4);
  rhs2 << rhs, rhs;
  auto sol2 = least_squares(stacked, rhs2);
  CHECK((sol2.x - exact).norm() < 1e-12);
  CHECK(sol2.residual_norm < 1e-12);

  Eigen::MatrixXd ones(2, 1);
  ones << 1, 1;
  Eigen::VectorXd b3(2);
  b3 << 0, 2;
  auto sol3 = least_squares(ones, b3);
  CHECK(sol3.x(0) == doctest::Approx(1.0));
  CHECK(sol3.residual_norm == doctest::Approx(std::sqrt(2.0)));

  CHECK_THROWS_AS(least_squares(Eigen::MatrixXd::Identity(2, 3), Eigen::VectorXd::Zero(2)),
                  DegreeMismatch);
}

TEST_CASE("least_squares satisfies the normal equations") {
  Rng rng(77);
  for (int trial = 0; trial < 5; ++trial) {
    int m = 12, n = 5;
    Eigen::MatrixXd A(m, n);
    Eigen::VectorXd b(m);
    for (int r = 0; r < m; ++r) {
      b(r) = rng.gaussian();
      for (int c = 0; c < n; ++c) A(r, c) = rng.gaussian();
    }
    auto sol = least_squares(A, b);
    double lhs = (A.transpose() * (A * sol.x - b)).norm();
    CHECK(lhs <= 1e-8 * (A.transpose() * b).norm() + 1e-12);
    // Residual recomputes.
    CHECK(sol.residual_norm == doctest::Approx((A * sol.x - b).norm()).epsilon(1e-10));
  }
}

TEST_CASE("det_numeric") {
  ComplexMatrix diag = ComplexMatrix::Zero(2, 2);
  diag(0, 0) = Complex(2);
  diag(1, 1) = Complex(3);
  CHECK(std::abs(det_numeric(diag) - Complex(6)) < 1e-14);

  ComplexMatrix swap(2, 2);
  swap << Complex(0), Complex(1), Complex(1), Complex(0);
  CHECK(std::abs(det_numeric(swap) - Complex(-1)) < 1e-14);

  // Hermitian determinants are real.
  Rng rng(91);
  ComplexMatrix h(4, 4);
  for (int r = 0; r < 4; ++r) {
    h(r, r) = Complex(rng.gaussian(), 0);
    for (int c = r + 1; c < 4; ++c) {
      h(r, c) = Complex(rng.gaussian(), rng.gaussian());
      h(c, r) = std::conj(h(r, c));
    }
  }
  Complex det = det_numeric(h);
  CHECK(std::abs(det.imag()) <= 1e-12 * std::abs(det));
}

TEST_CASE("det_numeric is multiplicative") {
  Rng rng(93);
  for (int trial = 0; trial < 4; ++trial) {
    ComplexMatrix A(5, 5), B(5, 5);
    for (int r = 0; r < 5; ++r)
      for (int c = 0; c < 5; ++c) {
        A(r, c) = Complex(rng.gaussian(), rng.gaussian());
        B(r, c) = Complex(rng.gaussian(), rng.gaussian());
      }
    Complex lhs = det_numeric(ComplexMatrix(A * B));
    Complex rhs = det_numeric(A) * det_numeric(B);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(rhs));
  }
}

TEST_CASE("is_positive_definite") {
  auto id = is_positive_definite(ComplexMatrix::Identity(3, 3));
  CHECK(id.positive_definite);
  CHECK(id.min_eigenvalue == doctest::Approx(1.0));

  ComplexMatrix indef = ComplexMatrix::Zero(2, 2);
  indef(0, 0) = Complex(1);
  indef(1, 1) = Complex(-1);
  auto res = is_positive_definite(indef);
  CHECK_FALSE(res.positive_definite);
  CHECK(res.min_eigenvalue == doctest::Approx(-1.0));

  // The quartic example pencil at e = (1,0,0): (1/8) [[14,0,2i,0],[0,1,0,-i],
  // [-2i,0,1,i],[0,i,-i,4]] is positive definite.
  ComplexMatrix m(4, 4);
  const Complex I(0, 1);
  m << Complex(14), Complex(0), 2.0 * I, Complex(0),
       Complex(0), Complex(1), Complex(0), -I,
       -2.0 * I, Complex(0), Complex(1), I,
       Complex(0), I, -I, Complex(4);
  m *= 1.0 / 8.0;
  CHECK(is_positive_definite(m).positive_definite);

  ComplexMatrix skew(2, 2);
  skew << Complex(1), Complex(1), Complex(0), Complex(1);
  CHECK_THROWS_AS(is_positive_definite(skew), InvalidInput);
}
