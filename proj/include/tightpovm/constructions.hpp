#pragma once

// Generators for SIC-POVMs, complete sets of MUBs in prime dimension, and
// control POVMs (orthonormal basis, random rank-one).

#include <cstdint>
#include <vector>

#include "tightpovm/linops.hpp"
#include "tightpovm/povm.hpp"

namespace tightpovm {

// D_{j,k} = X^j Z^k, returned at index j * d + k.
std::vector<Operator> wh_displacements(int dim);

enum class FiducialSource { analytic, numerical };

struct FiducialVector {
  int dim = 0;
  StateVector coords;
  FiducialSource source = FiducialSource::analytic;
  std::uint64_t seed = 0;  // numerical only
  bool certified = false;
  // max |overlap^2 - 1/(d+1)| over distinct orbit pairs
  double overlap_dispersion = 0.0;
};

struct FiducialSearchOptions {
  std::uint64_t seed = 1;
  int restarts = 16;
  int max_iters = 20000;
  double certify_tol = 1e-9;
};

// Analytic for d = 2, 3; numerical search over the orbit potential otherwise.
FiducialVector sic_fiducial(int dim, const FiducialSearchOptions& opts = {});

// Weyl-Heisenberg orbit of a fiducial, index j * d + k.
std::vector<StateVector> wh_orbit(const StateVector& fiducial);

// sum_{(j,k) != (0,0)} |<psi|D_{j,k} psi>|^4; the SIC value is (d-1)/(d+1).
double orbit_potential(const StateVector& psi);

// Throws NotCertified when the fiducial search does not certify.
DiscretePOVM sic_povm(int dim, const FiducialSearchOptions& opts = {});
DiscretePOVM sic_povm(const FiducialVector& fiducial);

struct MubFamily {
  int p = 0;
  // bases[l][k] is vector k of basis l; basis 0 is computational.
  std::vector<std::vector<StateVector>> bases;
};

bool is_prime(int n);

MubFamily mub_family(int p);

// Outcomes ordered basis-major: index l * p + k.
DiscretePOVM mub_povm(int p);
DiscretePOVM mub_povm(const MubFamily& family);

DiscretePOVM basis_povm(int dim);

// n rank-one elements |w_i><w_i|, w_i = G^{-1/2} v_i, G = sum_i |v_i><v_i|.
DiscretePOVM random_rank_one_povm(int dim, int n, std::uint64_t seed);

}  // namespace tightpovm
