#include "hyperdet/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "hyperdet/rng.hpp"

namespace hyperdet {

InterpolatedDeterminant interpolate_determinant(const HermitianPencil& pencil, std::uint64_t seed) {
  int d = pencil.d;
  if (d < 1) throw InvalidInput("pencil must have positive size");
  int nm = monomial_count(d);
  int n_samples = 2 * nm;

  for (int attempt = 0; attempt < 3; ++attempt) {
    Rng rng(Rng::derive(seed, 0xF17 + attempt));
    Eigen::MatrixXd V(n_samples, nm);
    Eigen::VectorXd rhs(n_samples);
    double max_det = 0.0, max_imag = 0.0;
    for (int s = 0; s < n_samples; ++s) {
      Eigen::Vector3d q = rng.unit_sphere_point();
      Complex det = det_numeric(pencil.at(q));
      max_det = std::max(max_det, std::abs(det));
      max_imag = std::max(max_imag, std::abs(det.imag()));
      rhs(s) = det.real();
      std::vector<double> xp(d + 1), yp(d + 1), zp(d + 1);
      xp[0] = yp[0] = zp[0] = 1.0;
      for (int t = 1; t <= d; ++t) {
        xp[t] = xp[t - 1] * q(0);
        yp[t] = yp[t - 1] * q(1);
        zp[t] = zp[t - 1] * q(2);
      }
      for (int c = 0; c < nm; ++c) {
        Monomial m = monomial_at(c, d);
        V(s, c) = xp[m.i] * yp[m.j] * zp[m.k];
      }
    }
    if (max_imag > 1e-10 * std::max(1.0, max_det)) {
      throw InvalidInput("pencil determinant is not real on real points (max imaginary part " +
                         std::to_string(max_imag) + "); input is not Hermitian");
    }
    LeastSquaresSolution fit = least_squares(V, rhs, 1e-12);
    if (fit.rank < nm || fit.smallest_singular_value < 1e-10 * fit.largest_singular_value) {
      continue;  // resample with a fresh seed
    }
    std::vector<Complex> coeffs(nm);
    for (int c = 0; c < nm; ++c) coeffs[c] = Complex(fit.x(c), 0.0);
    InterpolatedDeterminant out;
    out.poly = HomogeneousPoly(d, std::move(coeffs));
    out.fit_residual = fit.residual_norm;
    out.sample_count = n_samples;
    return out;
  }
  throw IllConditionedFit("interpolation sample matrix stayed ill-conditioned after 3 attempts");
}

ErrorReport representation_error(const HomogeneousPoly& f, const HermitianPencil& pencil, double c,
                                 std::uint64_t seed) {
  if (f.degree() != pencil.d) throw DegreeMismatch("deg(f) must match the pencil size");
  InterpolatedDeterminant det = interpolate_determinant(pencil, seed);
  ErrorReport report;
  report.c_used = c;
  report.sample_count = det.sample_count;
  report.fit_residual = det.fit_residual;
  double abs_error = 0.0;
  for (int idx = 0; idx < monomial_count(f.degree()); ++idx) {
    abs_error = std::max(abs_error, std::abs(f.coeffs()[idx] - c * det.poly.coeffs()[idx]));
  }
  report.abs_error = abs_error;
  report.rel_error = abs_error / std::max(max_abs_coeff(f), 1e-300);
  return report;
}

HyperbolicityResult hyperbolicity_check(const HomogeneousPoly& f, const Direction& e, int trials,
                                        std::uint64_t seed, const Tolerances& tol) {
  if (!is_real(f, tol.poly_real)) throw InvalidInput("hyperbolicity check requires a real polynomial");
  double fe = std::abs(evaluate(f, e.e));
  double fscale = max_abs_coeff(f) * std::pow(std::max(1.0, e.e.norm()), f.degree());
  if (fe <= 1e-13 * std::max(fscale, 1e-300)) throw InvalidInput("f(e) must be nonzero");

  HyperbolicityResult out;
  out.hyperbolic = true;
  Rng rng(Rng::derive(seed, 0x687970));
  int degree = f.degree();
  for (int trial = 0; trial < trials; ++trial) {
    Eigen::Vector3d p = rng.gaussian_vector3();
    std::vector<Complex> restricted = line_restriction(f, e.e, p);
    std::vector<Complex> roots = univariate_roots(restricted);
    for (const Complex& r : roots) {
      double w = std::abs(r.imag()) / (1.0 + std::abs(r));
      if (w <= tol.hyperbolicity || w <= out.worst_imaginary) continue;
      // Root clusters are not determined to machine precision by the stored
      // coefficients. If the real part already reproduces the evaluation
      // floor, the data cannot distinguish the root from a real one; only
      // residuals above the floor witness genuine non-real roots.
      Complex value(0, 0);
      double scale = 0.0, power = 1.0;
      double re = r.real();
      for (size_t i = restricted.size(); i-- > 0;) value = value * re + restricted[i];
      for (size_t i = 0; i < restricted.size(); ++i) {
        scale += std::abs(restricted[i]) * power;
        power *= std::abs(re);
      }
      double floor = 64.0 * degree * 2.2e-16;
      if (std::abs(value) <= floor * std::max(scale, 1e-300)) continue;
      out.worst_imaginary = w;
      out.witness = p;
    }
  }
  out.hyperbolic = out.worst_imaginary <= tol.hyperbolicity;
  return out;
}

bool interlacing_check(const HomogeneousPoly& f, const HomogeneousPoly& g, const Direction& e,
                       int trials, std::uint64_t seed, const Tolerances& tol) {
  if (g.degree() != f.degree() - 1) throw DegreeMismatch("interlacer must have degree deg(f) - 1");
  if (f.degree() < 2) return true;  // no interior roots to compare

  Rng rng(Rng::derive(seed, 0x696E74));
  for (int trial = 0; trial < trials; ++trial) {
    Eigen::Vector3d p = rng.gaussian_vector3();
    std::vector<Complex> f_roots = univariate_roots(line_restriction(f, e.e, p));
    std::vector<Complex> g_roots = univariate_roots(line_restriction(g, e.e, p));
    std::vector<double> fr, gr;
    for (const Complex& r : f_roots) fr.push_back(r.real());
    for (const Complex& r : g_roots) gr.push_back(r.real());
    std::sort(fr.begin(), fr.end());
    std::sort(gr.begin(), gr.end());
    double span = fr.back() - fr.front();
    double slack = tol.interlacing_slack * std::max(span, 1e-300);
    for (size_t i = 0; i < gr.size(); ++i) {
      if (gr[i] < fr[i] - slack || gr[i] > fr[i + 1] + slack) return false;
    }
  }
  return true;
}

DefinitenessResult check_definite(const HermitianPencil& pencil, const Direction& e) {
  return is_positive_definite(pencil.at(e));
}

}  // namespace hyperdet
