#pragma once

#include <cstdint>
#include <random>

#include "tightpovm/linops.hpp"

namespace tightpovm {

using Rng = std::mt19937_64;

// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

// Seed for stream k of a run seeded with `seed`:
//   splitmix64(seed + 0x9E3779B97F4A7C15 * (k + 1))
// Streams are what make parallel trials reproducible.
std::uint64_t child_seed(std::uint64_t seed, std::uint64_t k);

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

// Vector of i.i.d. standard complex Gaussians (real and imaginary parts N(0, 1/2)).
StateVector complex_gaussian(int dim, Rng& rng);

// Haar-random pure state.
StateVector haar_random_state(int dim, Rng& rng);

// Haar-random unitary: QR of a complex Gaussian matrix with the phases of
// R's diagonal moved into Q.
Operator haar_random_unitary(int dim, Rng& rng);

// Density matrix G G^dag / tr(G G^dag) from a d x d Ginibre matrix.
Operator random_density_matrix(int dim, Rng& rng);

}  // namespace tightpovm
