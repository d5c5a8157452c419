#include "hyperdet/detrep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "hyperdet/rng.hpp"
#include "hyperdet/verify.hpp"

namespace hyperdet {

namespace {

Eigen::VectorXcd coeff_vector(const HomogeneousPoly& p) {
  Eigen::VectorXcd v(p.coeffs().size());
  for (size_t i = 0; i < p.coeffs().size(); ++i) v(i) = p.coeffs()[i];
  return v;
}

HomogeneousPoly poly_from_vector(int degree, const Eigen::VectorXcd& v) {
  std::vector<Complex> c(v.size());
  for (int i = 0; i < v.size(); ++i) c[i] = v(i);
  return HomogeneousPoly(degree, std::move(c));
}

// Leading coefficient (earliest monomial of largest modulus) scaled to 1.
Eigen::VectorXcd normalize_leading(const Eigen::VectorXcd& v) {
  int best = 0;
  double best_mod = std::abs(v(0));
  for (int i = 1; i < v.size(); ++i) {
    if (std::abs(v(i)) > best_mod) {
      best_mod = std::abs(v(i));
      best = i;
    }
  }
  if (best_mod == 0.0) throw InternalError("cannot normalize the zero vector");
  Eigen::VectorXcd out = v / v(best);
  out(best) = Complex(1, 0);
  return out;
}

void check_linear_independence(const std::vector<HomogeneousPoly>& entries) {
  int n = static_cast<int>(entries[0].coeffs().size());
  ComplexMatrix B(n, entries.size());
  for (size_t c = 0; c < entries.size(); ++c) B.col(c) = coeff_vector(entries[c]);
  Eigen::JacobiSVD<ComplexMatrix> svd(B);
  const auto& sigma = svd.singularValues();
  if (sigma(sigma.size() - 1) <= 1e-10 * sigma(0)) {
    throw DimensionError("basis entries are numerically dependent (sigma_min/sigma_max " +
                         std::to_string(sigma(sigma.size() - 1) / sigma(0)) + ")");
  }
}

}  // namespace

std::vector<HomogeneousPoly> vanishing_space(const std::vector<ProjectivePoint>& S, int d,
                                             const Tolerances& tol) {
  if (d < 1) throw InvalidInput("degree must be at least 1");
  int expected_points = d * (d - 1) / 2;
  if (static_cast<int>(S.size()) != expected_points) {
    throw DimensionError("S has " + std::to_string(S.size()) + " points, expected " +
                         std::to_string(expected_points));
  }
  int n = monomial_count(d - 1);
  if (S.empty()) {
    // d = 1: the constants vanish on the empty set.
    return {HomogeneousPoly::from_terms(0, {{Monomial{0, 0, 0}, Complex(1, 0)}})};
  }
  ComplexMatrix A(S.size(), n);
  for (size_t r = 0; r < S.size(); ++r) {
    const Eigen::Vector3cd& p = S[r].coords();
    std::vector<Complex> xp(d), yp(d), zp(d);
    xp[0] = yp[0] = zp[0] = Complex(1, 0);
    for (int t = 1; t < d; ++t) {
      xp[t] = xp[t - 1] * p(0);
      yp[t] = yp[t - 1] * p(1);
      zp[t] = zp[t - 1] * p(2);
    }
    for (int c = 0; c < n; ++c) {
      Monomial m = monomial_at(c, d - 1);
      A(r, c) = xp[m.i] * yp[m.j] * zp[m.k];
    }
  }
  std::vector<Eigen::VectorXcd> basis = nullspace(A, tol.nullspace);
  if (static_cast<int>(basis.size()) != d) {
    throw DimensionError("vanishing space has numerical dimension " + std::to_string(basis.size()) +
                         ", expected " + std::to_string(d));
  }
  std::vector<HomogeneousPoly> out;
  out.reserve(d);
  for (const auto& v : basis) out.push_back(poly_from_vector(d - 1, v));
  return out;
}

VanishingBasis extend_to_basis(const HomogeneousPoly& g, const std::vector<HomogeneousPoly>& space,
                               const Tolerances& tol) {
  if (space.empty()) throw InvalidInput("empty vanishing space");
  int d = static_cast<int>(space.size());
  for (const auto& p : space) {
    if (p.degree() != g.degree()) throw DegreeMismatch("space entries must match deg(g)");
  }
  int n = monomial_count(g.degree());
  ComplexMatrix B(n, d);
  for (int c = 0; c < d; ++c) B.col(c) = coeff_vector(space[c]);
  Eigen::VectorXcd g_vec = coeff_vector(g);
  double g_norm = g_vec.norm();
  if (g_norm == 0.0) throw InvalidInput("interlacer is the zero polynomial");

  // The space basis is orthonormal by construction, so B B^* projects.
  Eigen::VectorXcd coords = B.adjoint() * g_vec;
  double residual = (g_vec - B * coords).norm() / g_norm;
  if (residual > tol.span_residual) {
    throw NotInSpan("interlacer is not in the vanishing space (projection residual " +
                    std::to_string(residual) + ")");
  }

  Eigen::VectorXcd g_hat = g_vec / g_norm;
  std::vector<Eigen::VectorXcd> remainders;
  remainders.reserve(d);
  for (int c = 0; c < d; ++c) {
    Eigen::VectorXcd w = B.col(c) - g_hat * g_hat.dot(B.col(c));
    remainders.push_back(w);
  }
  int drop = 0;
  double drop_norm = remainders[0].norm();
  for (int c = 1; c < d; ++c) {
    if (remainders[c].norm() < drop_norm) {
      drop_norm = remainders[c].norm();
      drop = c;
    }
  }

  VanishingBasis out;
  out.d = d;
  out.entries.push_back(g);
  std::vector<Eigen::VectorXcd> accepted;
  for (int c = 0; c < d; ++c) {
    if (c == drop) continue;
    Eigen::VectorXcd w = remainders[c];
    for (const auto& u : accepted) w -= u * u.dot(w);
    double norm = w.norm();
    if (norm < 1e-10) {
      throw DimensionError("vanishing space collapsed while extending the basis");
    }
    w /= norm;
    accepted.push_back(w);
    out.entries.push_back(poly_from_vector(g.degree(), normalize_leading(w)));
  }
  check_linear_independence(out.entries);
  return out;
}

namespace {

// Index layout of the 3 d^2 real Hermitian parameters: per matrix, d diagonal
// entries first, then (Re, Im) pairs of the strict upper triangle row-major.
struct ParamLayout {
  int d;
  int per_matrix() const { return d * d; }
  int diag(int t, int i) const { return t * per_matrix() + i; }
  int upper(int t, int i, int j, int part) const {
    int offset = i * (2 * d - i - 1) / 2 + (j - i - 1);
    return t * per_matrix() + d + 2 * offset + part;
  }
};

// Adds alpha * (Mt)_{ij} to the realified rows of one complex equation.
void add_entry_coeff(Eigen::MatrixXd& A, const ParamLayout& layout, int row_re, int row_im, int t,
                     int i, int j, Complex alpha) {
  if (i == j) {
    int col = layout.diag(t, i);
    A(row_re, col) += alpha.real();
    A(row_im, col) += alpha.imag();
    return;
  }
  if (i < j) {
    int col_re = layout.upper(t, i, j, 0);
    int col_im = layout.upper(t, i, j, 1);
    A(row_re, col_re) += alpha.real();
    A(row_im, col_re) += alpha.imag();
    A(row_re, col_im) += -alpha.imag();  // alpha * i
    A(row_im, col_im) += alpha.real();
  } else {
    int col_re = layout.upper(t, j, i, 0);
    int col_im = layout.upper(t, j, i, 1);
    A(row_re, col_re) += alpha.real();
    A(row_im, col_re) += alpha.imag();
    A(row_re, col_im) += alpha.imag();  // alpha * (-i)
    A(row_im, col_im) += -alpha.real();
  }
}

}  // namespace

AssembledSystem assemble_system(const VanishingBasis& a, const HomogeneousPoly& f) {
  int d = a.d;
  if (static_cast<int>(a.entries.size()) != d) throw DimensionError("basis must have d entries");
  if (f.degree() != d) throw DegreeMismatch("deg(f) must equal d");
  for (const auto& p : a.entries) {
    if (p.degree() != d - 1) throw DegreeMismatch("basis entries must have degree d - 1");
  }
  int nm = monomial_count(d);
  int nm_low = monomial_count(d - 1);
  AssembledSystem sys;
  sys.d = d;
  sys.complex_equations = 2 * d * nm;
  sys.unknowns = 3 * d * d;
  sys.A = Eigen::MatrixXd::Zero(2 * sys.complex_equations, sys.unknowns);
  sys.b = Eigen::VectorXd::Zero(2 * sys.complex_equations);
  ParamLayout layout{d};

  for (int entry = 0; entry < d; ++entry) {
    for (int other = 0; other < d; ++other) {
      // Block 0, column `entry` of a M: term a_other * M_{other, entry}.
      // Block 1, row `entry` of M conj(a)^T: term M_{entry, other} * conj(a_other).
      const HomogeneousPoly& ap = a.entries[other];
      for (int low = 0; low < nm_low; ++low) {
        Complex coeff = ap.coeffs()[low];
        if (coeff == Complex(0, 0)) continue;
        Monomial nu = monomial_at(low, d - 1);
        for (int t = 0; t < 3; ++t) {
          Monomial mu{nu.i + (t == 0), nu.j + (t == 1), nu.k + (t == 2)};
          int mu_idx = monomial_index(mu, d);
          int ceq0 = entry * nm + mu_idx;
          add_entry_coeff(sys.A, layout, 2 * ceq0, 2 * ceq0 + 1, t, other, entry, coeff);
          int ceq1 = d * nm + entry * nm + mu_idx;
          add_entry_coeff(sys.A, layout, 2 * ceq1, 2 * ceq1 + 1, t, entry, other, std::conj(coeff));
        }
      }
    }
  }
  for (int mu_idx = 0; mu_idx < nm; ++mu_idx) {
    Complex fc = f.coeffs()[mu_idx];
    int ceq0 = mu_idx;  // entry 0 of block 0
    sys.b(2 * ceq0) = fc.real();
    sys.b(2 * ceq0 + 1) = fc.imag();
    int ceq1 = d * nm + mu_idx;  // entry 0 of block 1
    sys.b(2 * ceq1) = fc.real();
    sys.b(2 * ceq1 + 1) = fc.imag();
  }

  // The second vector equation is the entrywise conjugate of the first, so
  // its realified rows must be signed copies of first-block rows.
  double scale = std::max(1.0, sys.A.cwiseAbs().maxCoeff());
  double worst = 0.0;
  for (int ceq0 = 0; ceq0 < d * nm; ++ceq0) {
    int ceq1 = d * nm + ceq0;
    worst = std::max(worst, (sys.A.row(2 * ceq1) - sys.A.row(2 * ceq0)).cwiseAbs().maxCoeff());
    worst = std::max(worst, (sys.A.row(2 * ceq1 + 1) + sys.A.row(2 * ceq0 + 1)).cwiseAbs().maxCoeff());
  }
  if (worst > 1e-14 * scale) {
    throw InternalError("conjugate-redundancy self-check failed (mismatch " + std::to_string(worst) + ")");
  }
  return sys;
}

std::pair<HermitianPencil, LeastSquaresSolution> solve_system(const AssembledSystem& sys,
                                                              const Tolerances& tol) {
  LeastSquaresSolution lsq = least_squares(sys.A, sys.b, tol.rank);
  if (lsq.rank < sys.unknowns) {
    throw RankDeficient("system rank " + std::to_string(lsq.rank) + " < " +
                        std::to_string(sys.unknowns) + " unknowns");
  }
  double b_norm = sys.b.norm();
  if (lsq.residual_norm > tol.residual * b_norm) {
    throw LargeResidual("least-squares residual " + std::to_string(lsq.residual_norm) +
                        " exceeds gate " + std::to_string(tol.residual * b_norm));
  }

  int d = sys.d;
  ParamLayout layout{d};
  HermitianPencil pencil;
  pencil.d = d;
  ComplexMatrix* mats[3] = {&pencil.M1, &pencil.M2, &pencil.M3};
  for (int t = 0; t < 3; ++t) {
    ComplexMatrix& M = *mats[t];
    M = ComplexMatrix::Zero(d, d);
    for (int i = 0; i < d; ++i) M(i, i) = Complex(lsq.x(layout.diag(t, i)), 0.0);
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) {
        Complex v(lsq.x(layout.upper(t, i, j, 0)), lsq.x(layout.upper(t, i, j, 1)));
        M(i, j) = v;
        M(j, i) = std::conj(v);
      }
    }
  }
  return {pencil, lsq};
}

double scale_constant(const HermitianPencil& pencil, const HomogeneousPoly& f, const Direction& e) {
  if (f.degree() != pencil.d) throw DegreeMismatch("deg(f) must match the pencil size");
  Complex det = det_numeric(pencil.at(e));
  double det_scale = std::max(1e-300, std::abs(det));
  if (std::abs(det.imag()) > 1e-8 * det_scale) {
    throw NonPositiveScale("determinant at e is not numerically real");
  }
  Complex fe = evaluate(f, e.e);
  if (std::abs(det) < 1e-300) throw NonPositiveScale("pencil determinant vanishes at e");
  double c = fe.real() / det.real();
  if (!(c > 0.0)) {
    throw NonPositiveScale("scale constant " + std::to_string(c) + " is not positive");
  }
  return c;
}

HermitianPencil normalize_representation(const Representation& rep) {
  if (!(rep.c > 0.0)) throw NonPositiveScale("representation has non-positive scale");
  double s = std::pow(rep.c, 1.0 / rep.pencil.d);
  HermitianPencil out = rep.pencil;
  out.M1 *= s;
  out.M2 *= s;
  out.M3 *= s;
  return out;
}

namespace {

void validate_supplied_basis(const std::vector<HomogeneousPoly>& entries, int d,
                             const std::optional<IntersectionSet>& points) {
  if (static_cast<int>(entries.size()) != d) {
    throw InvalidInput("supplied basis must have exactly d entries");
  }
  for (const auto& p : entries) {
    if (p.degree() != d - 1) throw DegreeMismatch("supplied basis entries must have degree d - 1");
  }
  check_linear_independence(entries);
  if (points) {
    for (int idx : points->S) {
      const ProjectivePoint& p = points->all_points[idx];
      for (const auto& entry : entries) {
        double rel = std::abs(evaluate(entry, p.coords())) /
                     std::max(evaluation_scale(entry, p.coords()), 1e-300);
        if (rel > 1e-8) {
          throw NotInSpan("supplied basis entry does not vanish on S (relative value " +
                          std::to_string(rel) + ")");
        }
      }
    }
  }
}

}  // namespace

Representation represent(const HomogeneousPoly& f, const Direction& e, const RepresentOptions& opts) {
  auto t_start = std::chrono::steady_clock::now();
  int d = f.degree();
  if (d < 1) throw InvalidInput("degree must be at least 1");
  if (!is_real(f, opts.tol.poly_real)) throw InvalidInput("f must be a real polynomial");
  double fe = evaluate(f, e.e).real();
  if (!(fe > 0.0)) {
    throw NotHyperbolic("f(e) = " + std::to_string(fe) + " must be positive");
  }
  HyperbolicityResult hyp =
      hyperbolicity_check(f, e, opts.hyperbolicity_trials, Rng::derive(opts.seed, 0x6879), opts.tol);
  if (!hyp.hyperbolic) {
    throw NotHyperbolic("hyperbolicity check failed (worst normalized imaginary part " +
                        std::to_string(hyp.worst_imaginary) + ")");
  }

  Representation rep;
  rep.diagnostics.user_supplied_points = opts.points.has_value();
  rep.diagnostics.user_supplied_basis = opts.basis.has_value();

  // The interlacer: supplied basis wins, then a supplied g, then the
  // directional derivative of f rescaled to unit max coefficient. The
  // rescaling keeps the assembled rows balanced against the leading-
  // coefficient-1 complement entries; it only changes which interlacer is
  // used, and the scale constant is computed against the original f.
  HomogeneousPoly f_solve = f;
  HomogeneousPoly g;
  if (opts.basis) {
    if (opts.basis->empty()) throw InvalidInput("supplied basis is empty");
    g = opts.basis->front();
    if (opts.interlacer && !(g == *opts.interlacer)) {
      throw InvalidInput("supplied interlacer and basis[0] disagree");
    }
  } else if (opts.interlacer) {
    g = *opts.interlacer;
    if (g.degree() != d - 1) throw DegreeMismatch("interlacer must have degree d - 1");
    if (!is_real(g, opts.tol.poly_real)) throw InvalidInput("interlacer must be real");
    if (!(evaluate(g, e.e).real() > 0.0)) throw InvalidInput("interlacer must be positive at e");
  } else {
    double scale = max_abs_coeff(f);
    f_solve = Complex(1.0 / scale) * f;
    g = directional_derivative(f_solve, e);
  }

  Direction e_used = e;
  IntersectionSet iset;
  auto t_intersect_start = std::chrono::steady_clock::now();
  if (opts.points) {
    iset = *opts.points;
    iset.diagnostics.user_supplied = true;
  } else if (d == 1) {
    // Linear f: V(f, g) is empty and the vanishing space is the constants.
    iset.diagnostics.direction_used = e;
  } else if (!opts.basis) {
    int attempt = 0;
    while (true) {
      Direction e_try = attempt == 0 ? e
                                     : perturb_direction(e, Rng::derive(opts.seed, 0xE0 + attempt),
                                                         opts.perturb_magnitude);
      HomogeneousPoly g_try = (attempt == 0) ? g : directional_derivative(f_solve, e_try);
      try {
        IntersectOptions iopts;
        iopts.seed = Rng::derive(opts.seed, 0x1230 + attempt);
        iopts.tol = opts.tol;
        IntersectDiagnostics idiag;
        std::vector<ProjectivePoint> points = intersect_curves(f_solve, g_try, iopts, &idiag);
        TransversalityReport report = check_transverse(f_solve, g_try, points, opts.tol);
        if (!report.pass) {
          std::string why = report.any_real            ? "real intersection point"
                            : !report.separation_ok    ? "points too close"
                                                       : "near-singular Jacobian";
          throw TransversalityFailure("transversality check failed: " + why);
        }
        iset = split_conjugate(points, opts.tol, false);
        iset.diagnostics = idiag;
        iset.diagnostics.direction_used = e_try;
        g = g_try;
        e_used = e_try;
        rep.diagnostics.retries = attempt;
        break;
      } catch (const TransversalityFailure&) {
        if (attempt >= opts.max_retries) throw;
        ++attempt;
      }
    }
  }
  auto t_intersect_end = std::chrono::steady_clock::now();

  if (opts.basis) {
    validate_supplied_basis(*opts.basis, d, opts.points);
    rep.basis = VanishingBasis{d, *opts.basis};
  } else {
    std::vector<ProjectivePoint> S_points;
    S_points.reserve(iset.S.size());
    for (int idx : iset.S) S_points.push_back(iset.all_points[idx]);
    std::vector<HomogeneousPoly> space = vanishing_space(S_points, d, opts.tol);
    rep.basis = extend_to_basis(g, space, opts.tol);
  }

  AssembledSystem sys = assemble_system(rep.basis, f_solve);
  auto [pencil, lsq] = solve_system(sys, opts.tol);
  rep.pencil = pencil;
  rep.lsq = lsq;
  rep.c = scale_constant(pencil, f, e_used);
  rep.direction_used = e_used;
  rep.diagnostics.intersect = iset.diagnostics;

  DefinitenessResult def = is_positive_definite(pencil.at(e_used));
  rep.diagnostics.min_pencil_eigenvalue = def.min_eigenvalue;
  if (!def.positive_definite) {
    throw IndefiniteOutput("pencil at e has minimum eigenvalue " +
                           std::to_string(def.min_eigenvalue));
  }

  auto t_end = std::chrono::steady_clock::now();
  rep.diagnostics.total_seconds = std::chrono::duration<double>(t_end - t_start).count();
  rep.diagnostics.intersection_seconds =
      std::chrono::duration<double>(t_intersect_end - t_intersect_start).count();
  return rep;
}

}  // namespace hyperdet
