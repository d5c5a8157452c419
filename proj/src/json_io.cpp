#include "hyperdet/json_io.hpp"

#include <fstream>

namespace hyperdet {

namespace {

Json complex_to_json(const Complex& c) { return Json::array({c.real(), c.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("expected [re, im] pair");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

Json matrix_to_json(const ComplexMatrix& M) {
  Json rows = Json::array();
  for (int r = 0; r < M.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < M.cols(); ++c) row.push_back(complex_to_json(M(r, c)));
    rows.push_back(row);
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j, int d) {
  if (!j.is_array() || static_cast<int>(j.size()) != d) throw ParseError("matrix has wrong row count");
  ComplexMatrix M(d, d);
  for (int r = 0; r < d; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != d) {
      throw ParseError("matrix has wrong column count");
    }
    for (int c = 0; c < d; ++c) M(r, c) = complex_from_json(j[r][c]);
  }
  return M;
}

}  // namespace

Json poly_to_json(const HomogeneousPoly& p) {
  Json j;
  j["degree"] = p.degree();
  Json terms = Json::array();
  for (int idx = 0; idx < monomial_count(p.degree()); ++idx) {
    const Complex& c = p.coeffs()[idx];
    if (c == Complex(0, 0)) continue;
    Monomial m = monomial_at(idx, p.degree());
    Json term;
    term["exp"] = Json::array({m.i, m.j, m.k});
    term["re"] = c.real();
    if (c.imag() != 0.0) term["im"] = c.imag();
    terms.push_back(term);
  }
  j["terms"] = terms;
  return j;
}

HomogeneousPoly poly_from_json(const Json& j) {
  if (!j.contains("degree") || !j.contains("terms")) {
    throw ParseError("polynomial JSON needs \"degree\" and \"terms\"");
  }
  int degree = j["degree"].get<int>();
  std::vector<std::pair<Monomial, Complex>> terms;
  for (const Json& term : j["terms"]) {
    const Json& exp = term.at("exp");
    if (!exp.is_array() || exp.size() != 3) throw ParseError("term \"exp\" must be [i, j, k]");
    Monomial m{exp[0].get<int>(), exp[1].get<int>(), exp[2].get<int>()};
    double re = term.value("re", 0.0);
    double im = term.value("im", 0.0);
    terms.push_back({m, Complex(re, im)});
  }
  return HomogeneousPoly::from_terms(degree, terms);
}

Json pointset_to_json(const IntersectionSet& set) {
  Json j;
  Json points = Json::array();
  for (const ProjectivePoint& p : set.all_points) {
    Json pt;
    pt["coords"] = Json::array(
        {complex_to_json(p[0]), complex_to_json(p[1]), complex_to_json(p[2])});
    points.push_back(pt);
  }
  j["points"] = points;
  j["S_indices"] = set.S;
  return j;
}

IntersectionSet pointset_from_json(const Json& j, const Tolerances& tol) {
  IntersectionSet set;
  if (!j.contains("points")) throw ParseError("point set JSON needs \"points\"");
  for (const Json& pt : j["points"]) {
    const Json& coords = pt.at("coords");
    if (!coords.is_array() || coords.size() != 3) throw ParseError("point needs three coordinates");
    Eigen::Vector3cd v(complex_from_json(coords[0]), complex_from_json(coords[1]),
                       complex_from_json(coords[2]));
    set.all_points.emplace_back(v);
  }
  int n = static_cast<int>(set.all_points.size());
  if (j.contains("S_indices")) {
    for (const Json& idx : j["S_indices"]) {
      int v = idx.get<int>();
      if (v < 0 || v >= n) throw ParseError("S index out of range");
      set.S.push_back(v);
    }
  }
  // Best-effort conjugate pairing; supplied point sets are trusted, so a
  // failed match is recorded rather than rejected.
  try {
    IntersectionSet paired = split_conjugate(set.all_points, tol, true);
    set.conj_pairing = paired.conj_pairing;
    if (set.S.empty()) set.S = paired.S;
  } catch (const PairingFailure&) {
    set.conj_pairing.assign(n, -1);
  }
  set.diagnostics.user_supplied = true;
  return set;
}

Json basis_to_json(const std::vector<HomogeneousPoly>& entries) {
  Json j;
  Json list = Json::array();
  for (const HomogeneousPoly& p : entries) list.push_back(poly_to_json(p));
  j["entries"] = list;
  return j;
}

std::vector<HomogeneousPoly> basis_from_json(const Json& j) {
  if (!j.contains("entries")) throw ParseError("basis JSON needs \"entries\"");
  std::vector<HomogeneousPoly> entries;
  for (const Json& p : j["entries"]) entries.push_back(poly_from_json(p));
  return entries;
}

Json representation_to_json(const Representation& rep) {
  Json j;
  j["d"] = rep.pencil.d;
  j["c"] = rep.c;
  j["M1"] = matrix_to_json(rep.pencil.M1);
  j["M2"] = matrix_to_json(rep.pencil.M2);
  j["M3"] = matrix_to_json(rep.pencil.M3);
  Json diag;
  diag["residual"] = rep.lsq.residual_norm;
  diag["rank"] = rep.lsq.rank;
  diag["min_singular_value"] = rep.lsq.smallest_singular_value;
  diag["retries"] = rep.diagnostics.retries;
  diag["e_used"] = Json::array(
      {rep.direction_used.e(0), rep.direction_used.e(1), rep.direction_used.e(2)});
  j["diagnostics"] = diag;
  return j;
}

LoadedRepresentation representation_from_json(const Json& j) {
  LoadedRepresentation out;
  if (!j.contains("d") || !j.contains("c")) throw ParseError("representation JSON needs \"d\" and \"c\"");
  int d = j["d"].get<int>();
  out.pencil.d = d;
  out.pencil.M1 = matrix_from_json(j.at("M1"), d);
  out.pencil.M2 = matrix_from_json(j.at("M2"), d);
  out.pencil.M3 = matrix_from_json(j.at("M3"), d);
  out.c = j["c"].get<double>();
  if (j.contains("diagnostics") && j["diagnostics"].contains("e_used")) {
    const Json& e = j["diagnostics"]["e_used"];
    if (e.is_array() && e.size() == 3) {
      out.direction_used = Direction(e[0].get<double>(), e[1].get<double>(), e[2].get<double>());
      out.has_direction = true;
    }
  }
  return out;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open file: " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& err) {
    throw ParseError("invalid JSON in " + path + ": " + err.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot open file for writing: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace hyperdet
