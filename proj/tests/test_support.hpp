#ifndef HYPERDET_TEST_SUPPORT_HPP
#define HYPERDET_TEST_SUPPORT_HPP

#include <cmath>
#include <vector>

#include "hyperdet/detrep.hpp"
#include "hyperdet/intersect.hpp"
#include "hyperdet/poly.hpp"

namespace testsupport {

using namespace hyperdet;

// The nodal quartic example: f = x^4 - 4x^2y^2 + y^4 - 4x^2z^2 - 2y^2z^2 + z^4,
// hyperbolic with respect to (1,0,0), nodes at [0:+-1:1].
inline HomogeneousPoly quartic() {
  return parse_polynomial("x^4 - 4x^2y^2 + y^4 - 4x^2z^2 - 2y^2z^2 + z^4");
}

inline std::vector<HomogeneousPoly> quartic_basis() {
  return {
      parse_polynomial("x^3 - 2xy^2 - 2xz^2"),
      parse_polynomial("ix^3 + 4ixy^2 - 4x^2z - 4y^2z + 4z^3"),
      parse_polynomial("-3ix^3 + 4x^2y + 4ixy^2 - 4y^3 + 4yz^2"),
      parse_polynomial("-x^3 - 2ix^2y - 2ix^2z + 4xyz"),
  };
}

// Intersection points of the quartic with its x-derivative: the two nodes
// (once each) followed by the eight smooth points; the first six form S.
inline std::vector<ProjectivePoint> quartic_points() {
  const double s3 = std::sqrt(3.0);
  const Complex I(0, 1);
  std::vector<Eigen::Vector3cd> raw = {
      {Complex(0), Complex(1), Complex(1)},
      {Complex(0), Complex(-1), Complex(1)},
      {Complex(2), Complex(s3), I},
      {Complex(2), Complex(-s3), I},
      {Complex(2), I, Complex(s3)},
      {Complex(2), I, Complex(-s3)},
      {Complex(2), Complex(s3), -I},
      {Complex(2), Complex(-s3), -I},
      {Complex(2), -I, Complex(s3)},
      {Complex(2), -I, Complex(-s3)},
  };
  std::vector<ProjectivePoint> pts;
  pts.reserve(raw.size());
  for (const auto& v : raw) pts.emplace_back(v);
  return pts;
}

inline IntersectionSet quartic_intersection_set() {
  IntersectionSet set;
  set.all_points = quartic_points();
  set.S = {0, 1, 2, 3, 4, 5};
  set.conj_pairing = {0, 1, 6, 7, 8, 9, 2, 3, 4, 5};
  set.diagnostics.user_supplied = true;
  return set;
}

// Reference solution pencil for the quartic, scaled by 1/8.
inline HermitianPencil quartic_pencil() {
  const Complex I(0, 1);
  HermitianPencil p;
  p.d = 4;
  p.M1 = ComplexMatrix(4, 4);
  p.M2 = ComplexMatrix(4, 4);
  p.M3 = ComplexMatrix(4, 4);
  p.M1 << Complex(14), Complex(0), 2.0 * I, Complex(0),
          Complex(0), Complex(1), Complex(0), -I,
          -2.0 * I, Complex(0), Complex(1), I,
          Complex(0), I, -I, Complex(4);
  p.M2 << Complex(0), Complex(0), Complex(-2), 2.0 * I,
          Complex(0), Complex(0), Complex(0), Complex(2),
          Complex(-2), Complex(0), Complex(0), Complex(0),
          -2.0 * I, Complex(2), Complex(0), Complex(0);
  p.M3 << Complex(0), Complex(2), Complex(0), -2.0 * I,
          Complex(2), Complex(0), Complex(0), Complex(0),
          Complex(0), Complex(0), Complex(0), Complex(-2),
          2.0 * I, Complex(0), Complex(-2), Complex(0);
  p.M1 /= 8.0;
  p.M2 /= 8.0;
  p.M3 /= 8.0;
  return p;
}

inline double pencil_distance(const HermitianPencil& a, const HermitianPencil& b) {
  return std::max({(a.M1 - b.M1).cwiseAbs().maxCoeff(), (a.M2 - b.M2).cwiseAbs().maxCoeff(),
                   (a.M3 - b.M3).cwiseAbs().maxCoeff()});
}

}  // namespace testsupport

#endif
