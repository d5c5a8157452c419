#ifndef HYPERDET_POLY_HPP
#define HYPERDET_POLY_HPP

#include <complex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hyperdet/errors.hpp"

namespace hyperdet {

using Complex = std::complex<double>;

/// Exponent triple (i, j, k) of x^i y^j z^k.
struct Monomial {
  int i = 0;
  int j = 0;
  int k = 0;

  int degree() const { return i + j + k; }
  bool operator==(const Monomial&) const = default;
};

/// Number of monomials of total degree d in three variables: binom(d+2, 2).
int monomial_count(int degree);

/// Position of a monomial in the fixed descending lexicographic order on
/// (i, j, k) -- x^d first, z^d last. Bijective onto 0..binom(d+2,2)-1.
int monomial_index(const Monomial& m, int degree);

/// Inverse of monomial_index.
Monomial monomial_at(int index, int degree);

/// Dense homogeneous trivariate polynomial with complex coefficients.
/// Coefficients are stored in the fixed monomial order. Values are immutable
/// after construction; all operations below are pure functions.
class HomogeneousPoly {
 public:
  HomogeneousPoly() : degree_(0), coeffs_(1, Complex(0, 0)) {}

  explicit HomogeneousPoly(int degree, std::vector<Complex> coeffs);

  /// Builds from sparse (monomial, coefficient) pairs; repeated monomials add.
  static HomogeneousPoly from_terms(int degree,
                                    const std::vector<std::pair<Monomial, Complex>>& terms);

  int degree() const { return degree_; }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  Complex coeff(const Monomial& m) const { return coeffs_[monomial_index(m, degree_)]; }

  bool operator==(const HomogeneousPoly&) const = default;

 private:
  int degree_;
  std::vector<Complex> coeffs_;
};

/// Real direction vector; solver entry points additionally require f(e) > 0.
struct Direction {
  Eigen::Vector3d e;

  Direction() : e(1.0, 0.0, 0.0) {}
  Direction(double e1, double e2, double e3);
  explicit Direction(const Eigen::Vector3d& v);
};

Complex evaluate(const HomogeneousPoly& p, const Eigen::Vector3cd& pt);
Complex evaluate(const HomogeneousPoly& p, const Eigen::Vector3d& pt);

/// Magnitude bound sum |c_m| |x|^i |y|^j |z|^k; the natural relative scale
/// for residuals of evaluate().
double evaluation_scale(const HomogeneousPoly& p, const Eigen::Vector3cd& pt);

double max_abs_coeff(const HomogeneousPoly& p);

/// True if every coefficient has |Im| <= tol.
bool is_real(const HomogeneousPoly& p, double tol = 1e-12);

HomogeneousPoly operator+(const HomogeneousPoly& a, const HomogeneousPoly& b);
HomogeneousPoly operator-(const HomogeneousPoly& a, const HomogeneousPoly& b);
HomogeneousPoly operator*(const Complex& s, const HomogeneousPoly& p);
HomogeneousPoly operator*(const HomogeneousPoly& a, const HomogeneousPoly& b);

/// Partial derivative with respect to variable 0 (x), 1 (y) or 2 (z).
/// Computed by exponent shift; degree drops by one.
HomogeneousPoly partial_derivative(const HomogeneousPoly& p, int var);

/// e1 df/dx + e2 df/dy + e3 df/dz; degree drops by one.
HomogeneousPoly directional_derivative(const HomogeneousPoly& p, const Direction& e);

/// Coefficientwise complex conjugate.
HomogeneousPoly conjugate_coeffs(const HomogeneousPoly& p);

/// Composition p(T * v) for an invertible real 3x3 matrix T.
HomogeneousPoly change_coords(const HomogeneousPoly& p, const Eigen::Matrix3d& T);

/// Coefficients (ascending in t) of the univariate restriction
/// t -> p(t * dir + base), computed by exact binomial expansion.
std::vector<Complex> line_restriction(const HomogeneousPoly& p, const Eigen::Vector3d& dir,
                                      const Eigen::Vector3d& base);

/// Parses sums of terms c * x^i y^j z^k with real decimal coefficients;
/// the imaginary unit `i` and parenthesized factors are also accepted so the
/// printer output round-trips. Throws ParseError with a character position.
HomogeneousPoly parse_polynomial(std::string_view text);

/// Prints terms in the fixed monomial order; parse_polynomial(to_string(p))
/// reproduces p exactly.
std::string to_string(const HomogeneousPoly& p);

}  // namespace hyperdet

#endif
