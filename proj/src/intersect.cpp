#include "hyperdet/intersect.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hyperdet/numerics.hpp"
#include "hyperdet/rng.hpp"

namespace hyperdet {

namespace {

bool coords_less(const Eigen::Vector3cd& a, const Eigen::Vector3cd& b) {
  for (int k = 0; k < 3; ++k) {
    if (a(k).real() != b(k).real()) return a(k).real() < b(k).real();
    if (a(k).imag() != b(k).imag()) return a(k).imag() < b(k).imag();
  }
  return false;
}

}  // namespace

ProjectivePoint::ProjectivePoint(const Eigen::Vector3cd& coords) : coords_(coords) {
  int best = 0;
  double best_mod = std::abs(coords_(0));
  for (int k = 1; k < 3; ++k) {
    double m = std::abs(coords_(k));
    if (m > best_mod) {
      best_mod = m;
      best = k;
    }
  }
  if (best_mod == 0.0) throw InvalidInput("projective point cannot be the zero triple");
  Complex pivot = coords_(best);
  for (int k = 0; k < 3; ++k) coords_(k) /= pivot;
  coords_(best) = Complex(1.0, 0.0);
}

bool ProjectivePoint::is_real(double tol) const {
  double worst = 0.0;
  for (int k = 0; k < 3; ++k) worst = std::max(worst, std::abs(coords_(k).imag()));
  return worst <= tol;
}

ProjectivePoint ProjectivePoint::conjugate() const { return ProjectivePoint(coords_.conjugate()); }

double chordal_distance(const ProjectivePoint& a, const ProjectivePoint& b) {
  Eigen::Vector3cd u = a.coords() / a.coords().norm();
  Eigen::Vector3cd v = b.coords() / b.coords().norm();
  // sin of the angle, computed as the component of v orthogonal to u; stable
  // down to machine precision for nearby points.
  Eigen::Vector3cd w = v - u * u.dot(v);
  return std::min(1.0, w.norm());
}

Direction perturb_direction(const Direction& e, std::uint64_t seed, double magnitude) {
  if (magnitude == 0.0) return e;
  Rng rng(Rng::derive(seed, 0x70657274));
  double norm = e.e.norm();
  Eigen::Vector3d delta = magnitude * norm * rng.unit_sphere_point();
  Eigen::Vector3d shifted = e.e + delta;
  return Direction(shifted * (norm / shifted.norm()));
}

double newton_residual(const HomogeneousPoly& f, const HomogeneousPoly& g,
                       const ProjectivePoint& p) {
  double rf = std::abs(evaluate(f, p.coords())) / std::max(evaluation_scale(f, p.coords()), 1e-300);
  double rg = std::abs(evaluate(g, p.coords())) / std::max(evaluation_scale(g, p.coords()), 1e-300);
  return std::max(rf, rg);
}

namespace {

// --- bivariate view of a rotated curve on the chart z = 1 -----------------

struct Bivariate {
  int degx = 0;                            // exact x-degree bound (total degree)
  std::vector<std::vector<double>> coef;   // coef[j][t] multiplies x^j y^t

  Complex eval_xcoeff(int j, Complex y) const {
    Complex acc(0, 0);
    const auto& c = coef[j];
    for (size_t t = c.size(); t-- > 0;) acc = acc * y + c[t];
    return acc;
  }

  Complex eval(Complex x, Complex y) const {
    Complex acc(0, 0);
    for (int j = degx; j >= 0; --j) acc = acc * x + eval_xcoeff(j, y);
    return acc;
  }

  double scale(Complex x, Complex y) const {
    double ax = std::abs(x), ay = std::abs(y), acc = 0.0;
    double xp = 1.0;
    for (int j = 0; j <= degx; ++j) {
      double yp = 1.0;
      for (size_t t = 0; t < coef[j].size(); ++t) {
        acc += std::abs(coef[j][t]) * xp * yp;
        yp *= ay;
      }
      xp *= ax;
    }
    return acc;
  }
};

Bivariate dehomogenize(const HomogeneousPoly& p) {
  int d = p.degree();
  Bivariate out;
  out.degx = d;
  out.coef.assign(d + 1, {});
  for (int j = 0; j <= d; ++j) out.coef[j].assign(d - j + 1, 0.0);
  for (int idx = 0; idx < monomial_count(d); ++idx) {
    Monomial m = monomial_at(idx, d);
    out.coef[m.i][m.j] += p.coeffs()[idx].real();
  }
  return out;
}

// Roots in y of Res_x(F, G) = det(Sylvester(y)), computed as eigenvalues of
// the companion linearization of the Sylvester matrix polynomial with a
// shift-invert at a random point. The scalar coefficients of the resultant
// spread like its Mahler measure (exponential in d(d-1)), which destroys a
// plain companion solve at higher degrees; the matrix-polynomial entries are
// the coefficients of f and g themselves and stay moderate. Eigenvalues of
// the linearized pencil at infinity land at lambda = 0 and are skipped.
std::vector<Complex> resultant_roots(const Bivariate& F, const Bivariate& G, Rng& rng) {
  int m = F.degx, n = G.degx;
  int ns = m + n;  // Sylvester size
  int dy = m;      // max y-degree of the entries
  std::vector<ComplexMatrix> S(dy + 1, ComplexMatrix::Zero(ns, ns));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c <= m; ++c) {
      const auto& poly = F.coef[m - c];
      for (size_t k = 0; k < poly.size(); ++k) S[k](r, r + c) = poly[k];
    }
  for (int r = 0; r < m; ++r)
    for (int c = 0; c <= n; ++c) {
      const auto& poly = G.coef[n - c];
      for (size_t k = 0; k < poly.size(); ++k) S[k](n + r, r + c) = poly[k];
    }
  int N = ns * dy;
  ComplexMatrix A = ComplexMatrix::Zero(N, N);
  ComplexMatrix B = ComplexMatrix::Zero(N, N);
  for (int blk = 0; blk + 1 < dy; ++blk) {
    A.block(blk * ns, (blk + 1) * ns, ns, ns) = ComplexMatrix::Identity(ns, ns);
    B.block(blk * ns, blk * ns, ns, ns) = ComplexMatrix::Identity(ns, ns);
  }
  for (int k = 0; k < dy; ++k) A.block((dy - 1) * ns, k * ns, ns, ns) = -S[k];
  B.block((dy - 1) * ns, (dy - 1) * ns, ns, ns) = S[dy];

  // The pencil has d^2 eigenvalues at infinity forming defective Jordan
  // chains, so any transform must keep their images away from the genuine
  // roots: under the Moebius map W = (A - sigma B)^-1 (A - tau B) infinity
  // goes exactly to theta = 1 (with its scatter ring), while a finite root y
  // lands at theta = (y - tau)/(y - sigma). Eigenvalues near 1 are excised;
  // two transforms at different scales cover every realistic root radius. A
  // scalar Newton polish on det(S(y)) via the trace identity then sharpens
  // each candidate, with the raw estimate kept when the polish moves it.
  auto polish = [&](Complex y) {
    for (int iter = 0; iter < 4; ++iter) {
      ComplexMatrix Sy = ComplexMatrix::Zero(ns, ns);
      ComplexMatrix Sdy = ComplexMatrix::Zero(ns, ns);
      for (int k = dy; k >= 0; --k) {
        if (k < dy) Sdy = Sdy * y + Sy;
        Sy = (k == dy) ? ComplexMatrix(S[k]) : ComplexMatrix(Sy * y + S[k]);
      }
      Eigen::PartialPivLU<ComplexMatrix> slu(Sy);
      Complex trace = slu.solve(Sdy).trace();
      if (!std::isfinite(trace.real()) || !std::isfinite(trace.imag()) || std::abs(trace) < 1e-300) {
        break;
      }
      Complex step = 1.0 / trace;
      y -= step;
      if (std::abs(step) < 1e-13 * (1.0 + std::abs(y))) break;
    }
    return y;
  };

  std::vector<Complex> roots;
  roots.reserve(2 * N);
  auto push_unique = [&](Complex y) {
    for (const Complex& seen : roots) {
      if (std::abs(seen - y) <= 1e-10 * (1.0 + std::abs(y))) return;
    }
    roots.push_back(y);
  };
  for (int pass = 0; pass < 2; ++pass) {
    double scale = pass == 0 ? 2.0 : 30.0;
    double a1 = 2.0 * std::numbers::pi * rng.uniform();
    double a2 = 2.0 * std::numbers::pi * rng.uniform();
    Complex sigma = scale * (0.75 + 0.5 * rng.uniform()) * Complex(std::cos(a1), std::sin(a1));
    Complex tau = -scale * (0.75 + 0.5 * rng.uniform()) * Complex(std::cos(a2), std::sin(a2));
    Eigen::PartialPivLU<ComplexMatrix> lu(A - sigma * B);
    ComplexMatrix W = lu.solve(A - tau * B);
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(W, false);
    if (solver.info() != Eigen::Success) throw InternalError("linearized resultant eigensolver failed");
    for (int k = 0; k < N; ++k) {
      Complex theta = solver.eigenvalues()(k);
      if (std::abs(theta - 1.0) < 0.02) continue;  // image of the point at infinity
      Complex y = (theta * sigma - tau) / (theta - 1.0);
      if (!std::isfinite(y.real()) || !std::isfinite(y.imag()) || std::abs(y) > 1e8) continue;
      Complex refined = polish(y);
      push_unique(refined);
      if (std::abs(refined - y) > 1e-8 * (1.0 + std::abs(y))) push_unique(y);
    }
  }
  return roots;
}

struct Newton2Result {
  Complex u, v;
  double residual = std::numeric_limits<double>::infinity();
};

// Newton iteration on a 2x2 complex system, keeping the best iterate. The
// contract only asks for 1e-12, but point accuracy dominates the final
// representation error, so we polish until machine-level stagnation.
template <typename EvalFn>
Newton2Result newton2(EvalFn&& eval, Complex u0, Complex v0, int max_iter = 50) {
  Newton2Result best;
  Complex u = u0, v = v0;
  for (int iter = 0; iter < max_iter; ++iter) {
    Complex r1, r2, j11, j12, j21, j22;
    double res = eval(u, v, r1, r2, j11, j12, j21, j22);
    if (res < best.residual) {
      best.residual = res;
      best.u = u;
      best.v = v;
    }
    if (res < 1e-15) break;
    Complex det = j11 * j22 - j12 * j21;
    if (std::abs(det) < 1e-300) break;
    Complex du = (r1 * j22 - r2 * j12) / det;
    Complex dv = (j11 * r2 - j21 * r1) / det;
    u -= du;
    v -= dv;
    double step = std::max(std::abs(du), std::abs(dv));
    if (step < 1e-17 * std::max(1.0, std::max(std::abs(u), std::abs(v)))) break;
  }
  return best;
}

struct ChartSystem {
  const HomogeneousPoly* f;
  const HomogeneousPoly* g;
  std::array<HomogeneousPoly, 3> df;
  std::array<HomogeneousPoly, 3> dg;

  ChartSystem(const HomogeneousPoly& f_, const HomogeneousPoly& g_) : f(&f_), g(&g_) {
    for (int v = 0; v < 3; ++v) {
      df[v] = partial_derivative(f_, v);
      dg[v] = partial_derivative(g_, v);
    }
  }
};

// Relative residual + Jacobian of (f, g) on the affine chart where coordinate
// `fixed` is pinned to 1 and (a, b) are the two free coordinates.
double chart_eval(const ChartSystem& sys, int fixed, Complex a, Complex b, Complex& r1, Complex& r2,
                  Complex& j11, Complex& j12, Complex& j21, Complex& j22) {
  int ia = fixed == 0 ? 1 : 0;
  int ib = fixed == 2 ? 1 : 2;
  Eigen::Vector3cd p;
  p(fixed) = Complex(1, 0);
  p(ia) = a;
  p(ib) = b;
  r1 = evaluate(*sys.f, p);
  r2 = evaluate(*sys.g, p);
  j11 = evaluate(sys.df[ia], p);
  j12 = evaluate(sys.df[ib], p);
  j21 = evaluate(sys.dg[ia], p);
  j22 = evaluate(sys.dg[ib], p);
  double sf = std::max(evaluation_scale(*sys.f, p), 1e-300);
  double sg = std::max(evaluation_scale(*sys.g, p), 1e-300);
  return std::max(std::abs(r1) / sf, std::abs(r2) / sg);
}

int chart_of(const ProjectivePoint& p) {
  int best = 0;
  double best_mod = std::abs(p[0]);
  for (int k = 1; k < 3; ++k)
    if (std::abs(p[k]) > best_mod) {
      best_mod = std::abs(p[k]);
      best = k;
    }
  return best;
}

// Smallest singular value of the row-scaled 2x2 Jacobian of (f, g) in the
// canonical chart of p.
double scaled_jacobian_sv(const ChartSystem& sys, const ProjectivePoint& p) {
  int fixed = chart_of(p);
  int ia = fixed == 0 ? 1 : 0;
  int ib = fixed == 2 ? 1 : 2;
  const Eigen::Vector3cd& c = p.coords();
  Complex j11 = evaluate(sys.df[ia], c);
  Complex j12 = evaluate(sys.df[ib], c);
  Complex j21 = evaluate(sys.dg[ia], c);
  Complex j22 = evaluate(sys.dg[ib], c);
  double sf = std::max({evaluation_scale(sys.df[ia], c), evaluation_scale(sys.df[ib], c), 1e-300});
  double sg = std::max({evaluation_scale(sys.dg[ia], c), evaluation_scale(sys.dg[ib], c), 1e-300});
  j11 /= sf;
  j12 /= sf;
  j21 /= sg;
  j22 /= sg;
  // Singular values of [[j11,j12],[j21,j22]] via the Gram matrix.
  double a = std::norm(j11) + std::norm(j12);
  double d = std::norm(j21) + std::norm(j22);
  Complex off = j11 * std::conj(j21) + j12 * std::conj(j22);
  double tr = a + d;
  double disc = std::sqrt(std::max(0.0, (a - d) * (a - d) / 4.0 + std::norm(off)));
  double lam_min = std::max(0.0, tr / 2.0 - disc);
  return std::sqrt(lam_min);
}

}  // namespace

std::vector<ProjectivePoint> intersect_curves(const HomogeneousPoly& f, const HomogeneousPoly& g,
                                              const IntersectOptions& opts,
                                              IntersectDiagnostics* diag_out) {
  int d = f.degree();
  if (g.degree() != d - 1) throw DegreeMismatch("interlacer must have degree deg(f) - 1");
  if (!is_real(f, opts.tol.poly_real) || !is_real(g, opts.tol.poly_real)) {
    throw InvalidInput("intersection requires real input polynomials");
  }
  int expected = d * (d - 1);
  if (expected == 0) return {};

  ChartSystem original(f, g);
  std::string last_failure = "no attempt made";

  for (int attempt = 0; attempt < opts.max_rotation_attempts; ++attempt) {
    Rng rot_rng(Rng::derive(opts.seed, 0x726F74 + attempt));
    Eigen::Matrix3d Q = rot_rng.random_orthogonal3();

    HomogeneousPoly fr = Complex(1.0 / max_abs_coeff(f)) * change_coords(f, Q);
    HomogeneousPoly gr = Complex(1.0 / max_abs_coeff(g)) * change_coords(g, Q);
    Bivariate F = dehomogenize(fr);
    Bivariate G = dehomogenize(gr);

    double f_lead = std::abs(F.coef[d][0]);
    double g_lead = std::abs(G.coef[d - 1][0]);
    if (f_lead < 1e-8 || g_lead < 1e-8) {
      last_failure = "degenerate leading coefficient after rotation";
      continue;
    }

    std::vector<Complex> y_roots = resultant_roots(F, G, rot_rng);
    if (static_cast<int>(y_roots.size()) < expected) {
      last_failure = "resultant produced " + std::to_string(y_roots.size()) +
                     " candidate roots, expected " + std::to_string(expected);
      continue;
    }

    // Local system in the rotated chart for Newton refinement.
    ChartSystem rotated(fr, gr);
    std::vector<ProjectivePoint> candidates;
    candidates.reserve(expected);
    auto refine_candidate = [&](Complex x0, Complex y0) {
      Newton2Result refined = newton2(
          [&](Complex u, Complex v, Complex& r1, Complex& r2, Complex& j11, Complex& j12,
              Complex& j21, Complex& j22) {
            return chart_eval(rotated, 2, u, v, r1, r2, j11, j12, j21, j22);
          },
          x0, y0);

      // Back to original coordinates, then a final polish on the canonical
      // chart of the true system.
      Eigen::Vector3cd rotated_pt(refined.u, refined.v, Complex(1, 0));
      Eigen::Vector3cd original_pt = Q.cast<Complex>() * rotated_pt;
      ProjectivePoint p(original_pt);
      int fixed = chart_of(p);
      int ia = fixed == 0 ? 1 : 0;
      int ib = fixed == 2 ? 1 : 2;
      Newton2Result polished = newton2(
          [&](Complex u, Complex v, Complex& r1, Complex& r2, Complex& j11, Complex& j12,
              Complex& j21, Complex& j22) {
            return chart_eval(original, fixed, u, v, r1, r2, j11, j12, j21, j22);
          },
          p[ia], p[ib]);
      Eigen::Vector3cd final_coords;
      final_coords(fixed) = Complex(1, 0);
      final_coords(ia) = polished.u;
      final_coords(ib) = polished.v;
      ProjectivePoint candidate(final_coords);
      // Spurious eigenvalues of the linearization never refine onto the
      // curve pair; only residual-clean points count.
      if (newton_residual(f, g, candidate) <= opts.tol.newton_target) {
        candidates.push_back(candidate);
      }
    };
    for (const Complex& y0 : y_roots) {
      // Recover x by root matching: x-roots of F(. , y0) scored by |G|. The
      // variable is rescaled by max(1, |y0|) so far-out points keep the
      // leading coefficient within range. Clustered intersection points can
      // put two true points behind nearly equal y-roots, so every x with a
      // small score is tried; duplicates merge in the dedupe below.
      double xs = std::max(1.0, std::abs(y0));
      std::vector<Complex> xpoly(d + 1);
      double sp = 1.0;
      for (int j = 0; j <= d; ++j) {
        xpoly[j] = F.eval_xcoeff(j, y0) * sp;
        sp *= xs;
      }
      std::vector<Complex> x_candidates;
      try {
        x_candidates = univariate_roots(xpoly);
      } catch (const InvalidInput&) {
        continue;  // spurious eigenvalue; the count check arbitrates
      }
      Complex best_x = xs * x_candidates[0];
      double best_score = std::numeric_limits<double>::infinity();
      for (const Complex& u : x_candidates) {
        Complex x0 = xs * u;
        double score = std::abs(G.eval(x0, y0)) / std::max(G.scale(x0, y0), 1e-300);
        if (score < best_score) {
          best_score = score;
          best_x = x0;
        }
      }
      refine_candidate(best_x, y0);
      int extras = 0;
      for (const Complex& u : x_candidates) {
        Complex x0 = xs * u;
        if (x0 == best_x || extras >= 3) continue;
        double score = std::abs(G.eval(x0, y0)) / std::max(G.scale(x0, y0), 1e-300);
        if (score <= std::max(1e-4, 1e3 * best_score)) {
          refine_candidate(x0, y0);
          ++extras;
        }
      }
    }

    // f and g are real, so the point set is closed under conjugation; the
    // conjugate of every candidate is itself a candidate seed. This recovers
    // points whose own extraction seed was off while the partner's was good.
    size_t primary = candidates.size();
    for (size_t k = 0; k < primary; ++k) {
      ProjectivePoint conj = candidates[k].conjugate();
      int fixed = chart_of(conj);
      int ia = fixed == 0 ? 1 : 0;
      int ib = fixed == 2 ? 1 : 2;
      Newton2Result polished = newton2(
          [&](Complex u, Complex v, Complex& r1, Complex& r2, Complex& j11, Complex& j12,
              Complex& j21, Complex& j22) {
            return chart_eval(original, fixed, u, v, r1, r2, j11, j12, j21, j22);
          },
          conj[ia], conj[ib]);
      Eigen::Vector3cd coords;
      coords(fixed) = Complex(1, 0);
      coords(ia) = polished.u;
      coords(ib) = polished.v;
      ProjectivePoint candidate(coords);
      if (newton_residual(f, g, candidate) <= opts.tol.newton_target) {
        candidates.push_back(candidate);
      }
    }

    // Merge numerically coincident points; a shortfall means the intersection
    // is not transverse for this rotation.
    std::sort(candidates.begin(), candidates.end(),
              [](const ProjectivePoint& a, const ProjectivePoint& b) {
                return coords_less(a.coords(), b.coords());
              });
    std::vector<ProjectivePoint> distinct;
    for (const ProjectivePoint& p : candidates) {
      bool duplicate = false;
      for (const ProjectivePoint& q : distinct) {
        if (chordal_distance(p, q) < opts.tol.separation) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) distinct.push_back(p);
    }
    if (static_cast<int>(distinct.size()) != expected) {
      last_failure = "found " + std::to_string(distinct.size()) + " distinct points, expected " +
                     std::to_string(expected);
      continue;
    }

    double max_res = 0.0;
    for (const ProjectivePoint& p : distinct) max_res = std::max(max_res, newton_residual(f, g, p));

    double min_jac = std::numeric_limits<double>::infinity();
    for (const ProjectivePoint& p : distinct) min_jac = std::min(min_jac, scaled_jacobian_sv(original, p));
    if (min_jac < opts.tol.jacobian) {
      throw TransversalityFailure("near-singular Jacobian at an intersection point (sigma_min " +
                                  std::to_string(min_jac) + ")");
    }

    double min_dist = std::numeric_limits<double>::infinity();
    for (size_t a = 0; a < distinct.size(); ++a)
      for (size_t b = a + 1; b < distinct.size(); ++b)
        min_dist = std::min(min_dist, chordal_distance(distinct[a], distinct[b]));

    if (diag_out) {
      diag_out->min_pairwise_distance = distinct.size() > 1 ? min_dist : 1.0;
      diag_out->max_newton_residual = max_res;
      diag_out->min_jacobian_sv = min_jac;
      diag_out->rotation_attempts = attempt + 1;
    }
    return distinct;
  }
  throw TransversalityFailure("intersection is not transverse: " + last_failure);
}

TransversalityReport check_transverse(const HomogeneousPoly& f, const HomogeneousPoly& g,
                                      const std::vector<ProjectivePoint>& points,
                                      const Tolerances& tol) {
  TransversalityReport report;
  ChartSystem sys(f, g);
  report.min_pairwise_distance = std::numeric_limits<double>::infinity();
  for (size_t a = 0; a < points.size(); ++a)
    for (size_t b = a + 1; b < points.size(); ++b)
      report.min_pairwise_distance =
          std::min(report.min_pairwise_distance, chordal_distance(points[a], points[b]));
  if (points.size() < 2) report.min_pairwise_distance = 1.0;

  report.min_jacobian_sv = std::numeric_limits<double>::infinity();
  for (const ProjectivePoint& p : points) {
    double sv = scaled_jacobian_sv(sys, p);
    report.jacobian_smallest_sv.push_back(sv);
    report.min_jacobian_sv = std::min(report.min_jacobian_sv, sv);
    bool real = p.is_real(tol.real_point);
    report.real_flags.push_back(real);
    report.any_real = report.any_real || real;
  }
  if (points.empty()) report.min_jacobian_sv = std::numeric_limits<double>::infinity();
  report.separation_ok = report.min_pairwise_distance > tol.separation;
  report.jacobians_ok = report.min_jacobian_sv > tol.jacobian;
  report.pass = report.separation_ok && report.jacobians_ok && !report.any_real;
  return report;
}

IntersectionSet split_conjugate(const std::vector<ProjectivePoint>& points, const Tolerances& tol,
                                bool allow_self_paired) {
  int n = static_cast<int>(points.size());
  IntersectionSet out;
  out.all_points = points;
  out.conj_pairing.assign(n, -1);

  for (int i = 0; i < n; ++i) {
    if (out.conj_pairing[i] >= 0) continue;
    ProjectivePoint conj = points[i].conjugate();
    int best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
      double dist = chordal_distance(conj, points[j]);
      if (dist < best_dist) {
        best_dist = dist;
        best = j;
      }
    }
    if (best < 0 || best_dist > tol.pair) {
      throw PairingFailure("point " + std::to_string(i) + " has no conjugate partner within tolerance");
    }
    if (best == i) {
      if (!allow_self_paired) {
        throw PairingFailure("point " + std::to_string(i) + " is self-conjugate (real)");
      }
      out.conj_pairing[i] = i;
      out.S.push_back(i);
      continue;
    }
    if (out.conj_pairing[best] >= 0) {
      throw PairingFailure("conjugate matching is not an involution");
    }
    out.conj_pairing[i] = best;
    out.conj_pairing[best] = i;
    // Representative choice: positive imaginary part at the first coordinate
    // that is not real.
    int pick = -1;
    for (int k = 0; k < 3 && pick < 0; ++k) {
      double im = points[i][k].imag();
      if (std::abs(im) > tol.real_point) pick = im > 0.0 ? i : best;
    }
    if (pick < 0) {
      throw PairingFailure("point " + std::to_string(i) + " pairs with a distinct point but looks real");
    }
    out.S.push_back(pick);
  }
  std::sort(out.S.begin(), out.S.end());

  out.diagnostics.min_pairwise_distance = std::numeric_limits<double>::infinity();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      out.diagnostics.min_pairwise_distance =
          std::min(out.diagnostics.min_pairwise_distance, chordal_distance(points[a], points[b]));
  if (n < 2) out.diagnostics.min_pairwise_distance = 1.0;
  return out;
}

}  // namespace hyperdet
