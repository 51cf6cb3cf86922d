#pragma once

// Measurement-based cloning: a POVM paired with one estimate state per
// outcome, scored by the fidelity of the estimate with the unknown input.

#include <cstdint>
#include <string>
#include <vector>

#include "tightpovm/kernels.hpp"
#include "tightpovm/povm.hpp"

namespace tightpovm {

class CloningStrategy {
 public:
  // Every estimate must be PSD with unit trace within 1e-10.
  CloningStrategy(DiscretePOVM povm, std::vector<Operator> estimates);

  const DiscretePOVM& povm() const { return povm_; }
  const std::vector<Operator>& estimates() const { return estimates_; }
  int dim() const { return povm_.dim(); }

 private:
  DiscretePOVM povm_;
  std::vector<Operator> estimates_;
};

// The strategy that answers P(x) = F(x)/tr F(x) on outcome x (I/d for
// zero-trace outcomes).
CloningStrategy povd_strategy(const DiscretePOVM& f);

// f(psi) = sum_x <psi|F(x)|psi> <psi|rho_hat(x)|psi>
double success_probability(const CloningStrategy& s, const StateVector& psi);

// (1 / (d(d+1))) sum_x tau(x) (1 + tr[P(x) rho_hat(x)])
double average_fidelity(const CloningStrategy& s);

// True when every element is rank one and rho_hat = P, the scope of the
// closed-form second moment and of posterior_mean.
bool is_rank_one_povd_strategy(const CloningStrategy& s, double tol = 1e-9);

struct FidelityMoments {
  double second_moment = 0.0;
  double variance = 0.0;
};

// Closed-form second moment
//   4 / (d(d+1)(d+2)(d+3)) (d^2 + 4d + sum_{x,y} tau tau |<x|y>|^4)
// for rank-one strategies with rho_hat = P; throws PreconditionError otherwise.
FidelityMoments fidelity_variance(const CloningStrategy& s);

struct SampleSummary {
  long long count = 0;
  double mean = 0.0;
  double std_error = 0.0;
  double variance = 0.0;
  double min = 0.0;
  double max = 0.0;
};

// f(psi) over `samples` Haar states, sample i drawn from Rng(child_seed(seed, i)).
SampleSummary sample_success_probability(const CloningStrategy& s, long long samples, std::uint64_t seed,
                                         ExecutionPolicy policy = ExecutionPolicy::parallel);

struct WorstCase {
  double value = 0.0;  // upper bound on inf_psi f(psi)
  StateVector state;
};

// Minimum over Haar samples, then projected-gradient refinement from the best
// sample.
WorstCase worst_case_fidelity(const CloningStrategy& s, long long samples = 512, int refine_iters = 50,
                              std::uint64_t seed = 0, ExecutionPolicy policy = ExecutionPolicy::parallel);

struct FidelityReport {
  double f_av = 0.0;
  double f_wc_estimate = 0.0;  // sampled upper bound, never above f_av
  double variance = 0.0;
  std::string variance_method;  // "closed_form" or "monte_carlo"
  SampleSummary samples;
};

FidelityReport fidelity_report(const CloningStrategy& s, long long samples = 512, int refine_iters = 50,
                               std::uint64_t seed = 0, ExecutionPolicy policy = ExecutionPolicy::parallel);

// sum_x tau(x) <psi|pi(x)|psi> pi(x) = F|pi(psi)); rank-one rho_hat = P only.
Operator posterior_mean(const CloningStrategy& s, const StateVector& psi);

}  // namespace tightpovm
