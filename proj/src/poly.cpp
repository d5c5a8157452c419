#include "hyperdet/poly.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>

namespace hyperdet {

int monomial_count(int degree) {
  if (degree < 0) throw InvalidInput("negative degree");
  return (degree + 2) * (degree + 1) / 2;
}

int monomial_index(const Monomial& m, int degree) {
  if (m.i < 0 || m.j < 0 || m.k < 0 || m.degree() != degree) {
    throw DegreeMismatch("monomial (" + std::to_string(m.i) + "," + std::to_string(m.j) + "," +
                         std::to_string(m.k) + ") does not have degree " + std::to_string(degree));
  }
  int below = degree - m.i;          // block of exponents i' > m.i has size sum_{t=1}^{below} t
  return below * (below + 1) / 2 + (degree - m.i - m.j);
}

Monomial monomial_at(int index, int degree) {
  if (index < 0 || index >= monomial_count(degree)) throw InvalidInput("monomial index out of range");
  int i = degree;
  int offset = 0;
  while (true) {
    int block = degree - i + 1;
    if (index < offset + block) break;
    offset += block;
    --i;
  }
  int j = (degree - i) - (index - offset);
  return Monomial{i, j, degree - i - j};
}

HomogeneousPoly::HomogeneousPoly(int degree, std::vector<Complex> coeffs)
    : degree_(degree), coeffs_(std::move(coeffs)) {
  if (degree_ < 0) throw InvalidInput("negative degree");
  if (static_cast<int>(coeffs_.size()) != monomial_count(degree_)) {
    throw DegreeMismatch("coefficient vector has length " + std::to_string(coeffs_.size()) +
                         ", expected " + std::to_string(monomial_count(degree_)));
  }
}

HomogeneousPoly HomogeneousPoly::from_terms(
    int degree, const std::vector<std::pair<Monomial, Complex>>& terms) {
  std::vector<Complex> coeffs(monomial_count(degree), Complex(0, 0));
  for (const auto& [m, c] : terms) coeffs[monomial_index(m, degree)] += c;
  return HomogeneousPoly(degree, std::move(coeffs));
}

Direction::Direction(double e1, double e2, double e3) : e(e1, e2, e3) {
  if (e.norm() == 0.0) throw InvalidInput("direction must be nonzero");
}

Direction::Direction(const Eigen::Vector3d& v) : e(v) {
  if (e.norm() == 0.0) throw InvalidInput("direction must be nonzero");
}

namespace {

// Power tables up to the polynomial degree keep evaluate() at one pass.
template <typename Scalar>
Complex evaluate_impl(const HomogeneousPoly& p, Scalar x, Scalar y, Scalar z) {
  int d = p.degree();
  std::vector<Scalar> xp(d + 1), yp(d + 1), zp(d + 1);
  xp[0] = yp[0] = zp[0] = Scalar(1);
  for (int t = 1; t <= d; ++t) {
    xp[t] = xp[t - 1] * x;
    yp[t] = yp[t - 1] * y;
    zp[t] = zp[t - 1] * z;
  }
  Complex acc(0, 0);
  int idx = 0;
  for (int i = d; i >= 0; --i) {
    for (int j = d - i; j >= 0; --j, ++idx) {
      const Complex& c = p.coeffs()[idx];
      if (c != Complex(0, 0)) acc += c * Complex(xp[i] * yp[j] * zp[d - i - j]);
    }
  }
  return acc;
}

}  // namespace

Complex evaluate(const HomogeneousPoly& p, const Eigen::Vector3cd& pt) {
  return evaluate_impl<Complex>(p, pt(0), pt(1), pt(2));
}

Complex evaluate(const HomogeneousPoly& p, const Eigen::Vector3d& pt) {
  return evaluate_impl<Complex>(p, Complex(pt(0)), Complex(pt(1)), Complex(pt(2)));
}

double evaluation_scale(const HomogeneousPoly& p, const Eigen::Vector3cd& pt) {
  int d = p.degree();
  double ax = std::abs(pt(0)), ay = std::abs(pt(1)), az = std::abs(pt(2));
  std::vector<double> xp(d + 1), yp(d + 1), zp(d + 1);
  xp[0] = yp[0] = zp[0] = 1.0;
  for (int t = 1; t <= d; ++t) {
    xp[t] = xp[t - 1] * ax;
    yp[t] = yp[t - 1] * ay;
    zp[t] = zp[t - 1] * az;
  }
  double acc = 0.0;
  int idx = 0;
  for (int i = d; i >= 0; --i)
    for (int j = d - i; j >= 0; --j, ++idx) acc += std::abs(p.coeffs()[idx]) * xp[i] * yp[j] * zp[d - i - j];
  return acc;
}

double max_abs_coeff(const HomogeneousPoly& p) {
  double m = 0.0;
  for (const Complex& c : p.coeffs()) m = std::max(m, std::abs(c));
  return m;
}

bool is_real(const HomogeneousPoly& p, double tol) {
  for (const Complex& c : p.coeffs())
    if (std::abs(c.imag()) > tol) return false;
  return true;
}

HomogeneousPoly operator+(const HomogeneousPoly& a, const HomogeneousPoly& b) {
  if (a.degree() != b.degree()) throw DegreeMismatch("cannot add polynomials of different degree");
  std::vector<Complex> c = a.coeffs();
  for (size_t t = 0; t < c.size(); ++t) c[t] += b.coeffs()[t];
  return HomogeneousPoly(a.degree(), std::move(c));
}

HomogeneousPoly operator-(const HomogeneousPoly& a, const HomogeneousPoly& b) {
  if (a.degree() != b.degree()) throw DegreeMismatch("cannot subtract polynomials of different degree");
  std::vector<Complex> c = a.coeffs();
  for (size_t t = 0; t < c.size(); ++t) c[t] -= b.coeffs()[t];
  return HomogeneousPoly(a.degree(), std::move(c));
}

HomogeneousPoly operator*(const Complex& s, const HomogeneousPoly& p) {
  std::vector<Complex> c = p.coeffs();
  for (Complex& v : c) v *= s;
  return HomogeneousPoly(p.degree(), std::move(c));
}

HomogeneousPoly operator*(const HomogeneousPoly& a, const HomogeneousPoly& b) {
  int d = a.degree() + b.degree();
  std::vector<Complex> c(monomial_count(d), Complex(0, 0));
  for (int ia = 0; ia < monomial_count(a.degree()); ++ia) {
    const Complex& ca = a.coeffs()[ia];
    if (ca == Complex(0, 0)) continue;
    Monomial ma = monomial_at(ia, a.degree());
    for (int ib = 0; ib < monomial_count(b.degree()); ++ib) {
      const Complex& cb = b.coeffs()[ib];
      if (cb == Complex(0, 0)) continue;
      Monomial mb = monomial_at(ib, b.degree());
      c[monomial_index(Monomial{ma.i + mb.i, ma.j + mb.j, ma.k + mb.k}, d)] += ca * cb;
    }
  }
  return HomogeneousPoly(d, std::move(c));
}

HomogeneousPoly partial_derivative(const HomogeneousPoly& p, int var) {
  if (var < 0 || var > 2) throw InvalidInput("variable index must be 0, 1 or 2");
  if (p.degree() == 0) throw DegreeMismatch("cannot differentiate a degree-0 polynomial");
  int d = p.degree();
  std::vector<Complex> c(monomial_count(d - 1), Complex(0, 0));
  for (int idx = 0; idx < monomial_count(d); ++idx) {
    Monomial m = monomial_at(idx, d);
    int exp = var == 0 ? m.i : (var == 1 ? m.j : m.k);
    if (exp == 0) continue;
    Monomial dm = m;
    (var == 0 ? dm.i : (var == 1 ? dm.j : dm.k)) -= 1;
    c[monomial_index(dm, d - 1)] += static_cast<double>(exp) * p.coeffs()[idx];
  }
  return HomogeneousPoly(d - 1, std::move(c));
}

HomogeneousPoly directional_derivative(const HomogeneousPoly& p, const Direction& e) {
  if (p.degree() == 0) throw DegreeMismatch("cannot differentiate a degree-0 polynomial");
  HomogeneousPoly out = Complex(e.e(0)) * partial_derivative(p, 0);
  out = out + Complex(e.e(1)) * partial_derivative(p, 1);
  out = out + Complex(e.e(2)) * partial_derivative(p, 2);
  return out;
}

HomogeneousPoly conjugate_coeffs(const HomogeneousPoly& p) {
  std::vector<Complex> c = p.coeffs();
  for (Complex& v : c) v = std::conj(v);
  return HomogeneousPoly(p.degree(), std::move(c));
}

HomogeneousPoly change_coords(const HomogeneousPoly& p, const Eigen::Matrix3d& T) {
  double det = T.determinant();
  if (std::abs(det) < 1e-12 * std::max(1.0, T.cwiseAbs().maxCoeff())) {
    throw SingularMatrix("coordinate change matrix is singular");
  }
  int d = p.degree();
  // Linear forms that substitute each variable, then powers built once.
  auto linear_form = [&](int row) {
    return HomogeneousPoly::from_terms(
        1, {{Monomial{1, 0, 0}, Complex(T(row, 0))},
            {Monomial{0, 1, 0}, Complex(T(row, 1))},
            {Monomial{0, 0, 1}, Complex(T(row, 2))}});
  };
  HomogeneousPoly lx = linear_form(0), ly = linear_form(1), lz = linear_form(2);
  std::vector<HomogeneousPoly> xp(d + 1), yp(d + 1), zp(d + 1);
  xp[0] = yp[0] = zp[0] = HomogeneousPoly::from_terms(0, {{Monomial{0, 0, 0}, Complex(1)}});
  for (int t = 1; t <= d; ++t) {
    xp[t] = xp[t - 1] * lx;
    yp[t] = yp[t - 1] * ly;
    zp[t] = zp[t - 1] * lz;
  }
  std::vector<Complex> out(monomial_count(d), Complex(0, 0));
  HomogeneousPoly acc(d, out);
  for (int idx = 0; idx < monomial_count(d); ++idx) {
    const Complex& c = p.coeffs()[idx];
    if (c == Complex(0, 0)) continue;
    Monomial m = monomial_at(idx, d);
    acc = acc + c * (xp[m.i] * yp[m.j] * zp[m.k]);
  }
  return acc;
}

std::vector<Complex> line_restriction(const HomogeneousPoly& p, const Eigen::Vector3d& dir,
                                      const Eigen::Vector3d& base) {
  int d = p.degree();
  std::vector<Complex> out(d + 1, Complex(0, 0));
  // Pascal triangle for the binomial expansions of (t*dir + base)^exp.
  std::vector<std::vector<double>> binom(d + 1, std::vector<double>(d + 1, 0.0));
  for (int n = 0; n <= d; ++n) {
    binom[n][0] = 1.0;
    for (int k = 1; k <= n; ++k)
      binom[n][k] = binom[n - 1][k - 1] + (k <= n - 1 ? binom[n - 1][k] : 0.0);
  }
  auto factor_coeffs = [&](double a, double b, int exp) {
    // (a t + b)^exp, ascending in t.
    std::vector<double> c(exp + 1, 0.0);
    for (int t = 0; t <= exp; ++t) c[t] = binom[exp][t] * std::pow(a, t) * std::pow(b, exp - t);
    return c;
  };
  for (int idx = 0; idx < monomial_count(d); ++idx) {
    const Complex& cm = p.coeffs()[idx];
    if (cm == Complex(0, 0)) continue;
    Monomial m = monomial_at(idx, d);
    std::vector<double> cx = factor_coeffs(dir(0), base(0), m.i);
    std::vector<double> cy = factor_coeffs(dir(1), base(1), m.j);
    std::vector<double> cz = factor_coeffs(dir(2), base(2), m.k);
    std::vector<double> xy(m.i + m.j + 1, 0.0);
    for (int a = 0; a <= m.i; ++a)
      for (int b = 0; b <= m.j; ++b) xy[a + b] += cx[a] * cy[b];
    for (int ab = 0; ab <= m.i + m.j; ++ab)
      for (int cidx = 0; cidx <= m.k; ++cidx) out[ab + cidx] += cm * (xy[ab] * cz[cidx]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parser: recursive descent over sums/products/powers of numbers, i, x, y, z
// and parenthesized subexpressions. Works over sparse trivariate polynomials
// and checks homogeneity at the end.

namespace {

struct SparsePoly {
  // exponent triple -> coefficient
  std::map<std::array<int, 3>, Complex> terms;

  static SparsePoly constant(Complex c) {
    SparsePoly p;
    if (c != Complex(0, 0)) p.terms[{0, 0, 0}] = c;
    return p;
  }
  static SparsePoly variable(int v) {
    SparsePoly p;
    std::array<int, 3> e{0, 0, 0};
    e[v] = 1;
    p.terms[{e[0], e[1], e[2]}] = Complex(1, 0);
    return p;
  }
};

SparsePoly add(const SparsePoly& a, const SparsePoly& b) {
  SparsePoly out = a;
  for (const auto& [e, c] : b.terms) {
    auto it = out.terms.find(e);
    if (it == out.terms.end()) {
      out.terms[e] = c;
    } else {
      it->second += c;
      if (it->second == Complex(0, 0)) out.terms.erase(it);
    }
  }
  return out;
}

SparsePoly mul(const SparsePoly& a, const SparsePoly& b) {
  SparsePoly out;
  for (const auto& [ea, ca] : a.terms) {
    for (const auto& [eb, cb] : b.terms) {
      std::array<int, 3> e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]};
      out.terms[e] += ca * cb;
      if (out.terms[e] == Complex(0, 0)) out.terms.erase(e);
    }
  }
  return out;
}

SparsePoly negate(const SparsePoly& a) {
  SparsePoly out = a;
  for (auto& [e, c] : out.terms) c = -c;
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  SparsePoly parse() {
    SparsePoly p = parse_sum();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return p;
  }

 private:
  std::string_view text_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) {
    throw ParseError(what + " at position " + std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek_is(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool consume(char c) {
    if (peek_is(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  SparsePoly parse_sum() {
    skip_space();
    bool neg = false;
    if (consume('-')) neg = true;
    else consume('+');
    SparsePoly acc = parse_product();
    if (neg) acc = negate(acc);
    while (true) {
      skip_space();
      if (consume('+')) {
        acc = add(acc, parse_product());
      } else if (consume('-')) {
        acc = add(acc, negate(parse_product()));
      } else {
        break;
      }
    }
    return acc;
  }

  SparsePoly parse_product() {
    SparsePoly acc = parse_power();
    while (true) {
      skip_space();
      if (consume('*')) {
        acc = mul(acc, parse_power());
        continue;
      }
      // Implicit multiplication: next token starts a factor.
      if (pos_ < text_.size()) {
        char c = text_[pos_];
        if (c == 'x' || c == 'y' || c == 'z' || c == 'i' || c == '(' ||
            std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
          acc = mul(acc, parse_power());
          continue;
        }
      }
      break;
    }
    return acc;
  }

  SparsePoly parse_power() {
    SparsePoly base = parse_factor();
    skip_space();
    if (consume('^')) {
      skip_space();
      size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ == start) fail("expected integer exponent");
      int exp = std::stoi(std::string(text_.substr(start, pos_ - start)));
      SparsePoly acc = SparsePoly::constant(Complex(1, 0));
      for (int t = 0; t < exp; ++t) acc = mul(acc, base);
      return acc;
    }
    return base;
  }

  SparsePoly parse_factor() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      SparsePoly inner = parse_sum();
      skip_space();
      if (!consume(')')) fail("expected ')'");
      return inner;
    }
    if (c == 'x') {
      ++pos_;
      return SparsePoly::variable(0);
    }
    if (c == 'y') {
      ++pos_;
      return SparsePoly::variable(1);
    }
    if (c == 'z') {
      ++pos_;
      return SparsePoly::variable(2);
    }
    if (c == 'i') {
      ++pos_;
      return SparsePoly::constant(Complex(0, 1));
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t start = pos_;
      while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
        size_t mark = pos_ + 1;
        if (mark < text_.size() && (text_[mark] == '+' || text_[mark] == '-')) ++mark;
        if (mark < text_.size() && std::isdigit(static_cast<unsigned char>(text_[mark]))) {
          pos_ = mark;
          while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }
      }
      double v = 0.0;
      try {
        v = std::stod(std::string(text_.substr(start, pos_ - start)));
      } catch (const std::exception&) {
        pos_ = start;
        fail("malformed number");
      }
      return SparsePoly::constant(Complex(v, 0));
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

HomogeneousPoly parse_polynomial(std::string_view text) {
  SparsePoly sp = Parser(text).parse();
  if (sp.terms.empty()) return HomogeneousPoly(0, {Complex(0, 0)});
  int degree = -1;
  for (const auto& [e, c] : sp.terms) {
    int d = e[0] + e[1] + e[2];
    if (degree == -1) degree = d;
    if (d != degree) {
      throw ParseError("polynomial is not homogeneous: found terms of degree " +
                       std::to_string(degree) + " and " + std::to_string(d));
    }
  }
  std::vector<std::pair<Monomial, Complex>> terms;
  terms.reserve(sp.terms.size());
  for (const auto& [e, c] : sp.terms) terms.push_back({Monomial{e[0], e[1], e[2]}, c});
  return HomogeneousPoly::from_terms(degree, terms);
}

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  // Trim to the shortest representation that round-trips.
  for (int prec = 1; prec < 17; ++prec) {
    char shorter[64];
    std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
    if (std::strtod(shorter, nullptr) == v) return shorter;
  }
  return buf;
}

std::string monomial_string(const Monomial& m) {
  std::string out;
  auto piece = [&](const char* var, int exp) {
    if (exp == 0) return;
    out += var;
    if (exp > 1) out += "^" + std::to_string(exp);
  };
  piece("x", m.i);
  piece("y", m.j);
  piece("z", m.k);
  return out;
}

}  // namespace

std::string to_string(const HomogeneousPoly& p) {
  std::string out;
  int d = p.degree();
  for (int idx = 0; idx < monomial_count(d); ++idx) {
    Complex c = p.coeffs()[idx];
    if (c == Complex(0, 0)) continue;
    Monomial m = monomial_at(idx, d);
    std::string mono = monomial_string(m);
    std::string coeff;
    bool negative = false;
    if (c.imag() == 0.0) {
      double re = c.real();
      negative = re < 0;
      double mag = std::abs(re);
      coeff = (mag == 1.0 && !mono.empty()) ? "" : format_double(mag);
    } else if (c.real() == 0.0) {
      double im = c.imag();
      negative = im < 0;
      double mag = std::abs(im);
      coeff = (mag == 1.0 ? "i" : format_double(mag) + "i");
    } else {
      coeff = "(" + format_double(c.real()) + (c.imag() < 0 ? " - " : " + ") +
              (std::abs(c.imag()) == 1.0 ? "i" : format_double(std::abs(c.imag())) + "i") + ")";
    }
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    out += coeff;
    out += mono;
  }
  if (out.empty()) out = "0";
  return out;
}

}  // namespace hyperdet
