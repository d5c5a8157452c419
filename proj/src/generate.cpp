#include "hyperdet/generate.hpp"

#include "hyperdet/rng.hpp"
#include "hyperdet/verify.hpp"

namespace hyperdet {

HermitianPencil generate_random_pencil(int d, std::uint64_t seed) {
  if (d < 1) throw InvalidInput("degree must be at least 1");
  Rng rng(Rng::derive(seed, 0x67656E));
  Eigen::MatrixXd B(d, d), C(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) B(i, j) = rng.gaussian(1.0, 0.5);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) C(i, j) = rng.gaussian(1.0, 0.5);
  HermitianPencil pencil;
  pencil.d = d;
  pencil.M1 = ComplexMatrix::Identity(d, d);
  pencil.M2 = (B + B.transpose()).cast<Complex>();
  pencil.M3 = (C + C.transpose()).cast<Complex>();
  return pencil;
}

HomogeneousPoly generate_random_hyperbolic(int d, std::uint64_t seed) {
  HermitianPencil pencil = generate_random_pencil(d, seed);
  InterpolatedDeterminant det = interpolate_determinant(pencil, Rng::derive(seed, 0xDE7));
  return det.poly;
}

}  // namespace hyperdet
