#ifndef HYPERDET_GENERATE_HPP
#define HYPERDET_GENERATE_HPP

#include <cstdint>

#include "hyperdet/pencil.hpp"
#include "hyperdet/poly.hpp"

namespace hyperdet {

/// Pencil x I + y (B + B^T) + z (C + C^T) with B, C entries drawn from
/// N(1, 0.5); its determinant is hyperbolic with respect to (1, 0, 0).
HermitianPencil generate_random_pencil(int d, std::uint64_t seed);

/// Random hyperbolic instance: the determinant of generate_random_pencil,
/// recovered by interpolation. Real, monic in x.
HomogeneousPoly generate_random_hyperbolic(int d, std::uint64_t seed);

}  // namespace hyperdet

#endif
