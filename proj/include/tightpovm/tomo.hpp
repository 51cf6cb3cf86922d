#pragma once

// Monte Carlo linear state tomography: outcome sampling, estimators, expected
// error laws and dual-frame comparisons.

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "tightpovm/constructions.hpp"
#include "tightpovm/kernels.hpp"
#include "tightpovm/povm.hpp"
#include "tightpovm/rng.hpp"

namespace tightpovm {

struct OutcomeCounts {
  std::vector<long long> counts;
  long long total = 0;
};

// Multinomial draw of N outcomes by inverse CDF. Probabilities in
// (-1e-14, 0) are clamped to zero; anything more negative is an error.
OutcomeCounts sample_outcomes(const DiscretePOVM& f, const Operator& rho, long long n, Rng& rng);

std::vector<double> frequency_estimate(const OutcomeCounts& counts);

// p(e_j^l) = n(e_j^l) / ((d+1) sum_k n(e_k^l)); counts are basis-major as in mub_povm.
std::vector<double> mub_constrained_estimate(const OutcomeCounts& counts, const MubFamily& family);

// Dual operators aligned with Povd::outcomes.
using DualFrame = std::vector<Operator>;

inline constexpr double kDualTol = 1e-9;

// (1/N) (Delta_p(Q) - tr rho^2), Delta_p(Q) = sum_x p(x) (Q(x)|Q(x)).
double expected_error(const DiscretePOVM& f, const DualFrame& q, const Operator& rho, long long n);

// sum_x tau(x) (Q(x)|Q(x))
double delta_tau(const DiscretePOVM& f, const DualFrame& q);

DualFrame canonical_dual(const DiscretePOVM& f);

struct PerturbedDual {
  DualFrame dual;
  double perturbation_energy = 0.0;  // sum_x tau(x) (D(x)|D(x)), D = Q - R
};

// R + D where D(x) = sum_k c_k(x) B_k with sum_x c_k(x) F(x) = 0 and B_k
// random Hermitian. Empty when the POVM has no linear redundancy (minimal).
std::optional<PerturbedDual> perturbed_dual(const DiscretePOVM& f, std::uint64_t seed,
                                            double scale = 0.1);

enum class Estimator { frequency, mub_constrained };

struct FixedState {
  Operator rho;
};
// rho = U sigma U^dag with U Haar-random per trial. An empty sigma means |0><0|.
struct HaarOrbit {
  Operator sigma;
};
using StateEnsemble = std::variant<FixedState, HaarOrbit>;

struct TomographyConfig {
  long long samples = 100;  // N
  long long trials = 1000;
  std::uint64_t seed = 0;
  Estimator estimator = Estimator::frequency;
  std::optional<DualFrame> dual;  // canonical when empty
  StateEnsemble ensemble = HaarOrbit{};
  bool keep_per_trial = false;
};

struct TomographyStats {
  double mean_sq_error = 0.0;
  double std_error = 0.0;
  // Closed-form expectation for the linear frequency estimator with the
  // chosen dual: fixed state -> expected_error, Haar orbit ->
  // (Delta_tau(Q)/d - tr sigma^2)/N.
  double predicted = 0.0;
  long long trials = 0;
  long long samples = 0;
  std::vector<double> per_trial;
};

// Trial k draws everything from Rng(child_seed(seed, k)).
TomographyStats run_tomography(const DiscretePOVM& f, const TomographyConfig& cfg,
                               ExecutionPolicy policy = ExecutionPolicy::parallel);

}  // namespace tightpovm
