#include "tightpovm/rng.hpp"

#include <cmath>

#include "tightpovm/errors.hpp"

namespace tightpovm {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t child_seed(std::uint64_t seed, std::uint64_t k) {
  return splitmix64(seed + 0x9E3779B97F4A7C15ULL * (k + 1));
}

StateVector complex_gaussian(int dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  StateVector v(dim);
  for (int i = 0; i < dim; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = cplx(re, im);
  }
  return v;
}

StateVector haar_random_state(int dim, Rng& rng) {
  if (dim < 1) throw PreconditionError("haar_random_state: dimension must be >= 1");
  StateVector v = complex_gaussian(dim, rng);
  return v / v.norm();
}

Operator haar_random_unitary(int dim, Rng& rng) {
  if (dim < 1) throw PreconditionError("haar_random_unitary: dimension must be >= 1");
  Operator z(dim, dim);
  for (int c = 0; c < dim; ++c) z.col(c) = complex_gaussian(dim, rng);
  Eigen::HouseholderQR<Operator> qr(z);
  Operator q = qr.householderQ();
  const Operator& r = qr.matrixQR();
  for (int i = 0; i < dim; ++i) {
    const cplx diag = r(i, i);
    const double mag = std::abs(diag);
    if (mag > 0.0) q.col(i) *= diag / mag;
  }
  return q;
}

Operator random_density_matrix(int dim, Rng& rng) {
  Operator g(dim, dim);
  for (int c = 0; c < dim; ++c) g.col(c) = complex_gaussian(dim, rng);
  Operator rho = g * g.adjoint();
  rho /= rho.trace().real();
  return hermitian_part(rho);
}

}  // namespace tightpovm
