#ifndef HYPERDET_PENCIL_HPP
#define HYPERDET_PENCIL_HPP

#include <Eigen/Dense>

#include "hyperdet/numerics.hpp"
#include "hyperdet/poly.hpp"

namespace hyperdet {

/// Hermitian d x d matrices of the pencil x M1 + y M2 + z M3.
struct HermitianPencil {
  int d = 0;
  ComplexMatrix M1, M2, M3;

  ComplexMatrix at(const Eigen::Vector3d& pt) const { return pt(0) * M1 + pt(1) * M2 + pt(2) * M3; }
  ComplexMatrix at(const Direction& e) const { return at(e.e); }
};

}  // namespace hyperdet

#endif
