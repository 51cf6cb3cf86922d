#pragma once

// Projected gradient descent on a product of unit spheres in C^d with an
// Armijo step-halving line search. Used by the 2-design search, the
// Weyl-Heisenberg fiducial search and the worst-case fidelity refinement.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "tightpovm/linops.hpp"

namespace tightpovm {

// Returns the objective at `points`; when `grad` is non-null, also writes the
// real Euclidean gradient (2 d/d conj(x_k)) for every point.
using SphereObjective =
    std::function<double(std::span<const StateVector> points, std::vector<StateVector>* grad)>;

struct SphereOptimizerOptions {
  int max_iters = 20000;
  double initial_step = 0.05;
  double grad_tol = 1e-12;      // stop when the projected gradient norm drops below this
  std::optional<double> target;  // stop once value <= *target + target_tol
  double target_tol = 0.0;
  double armijo = 1e-4;
  int min_step_exponent = 60;  // give up after this many halvings in one line search
  int log_every = 100;
};

struct IterationRecord {
  int restart = 0;
  int iteration = 0;
  double value = 0.0;
  double grad_norm = 0.0;
  double step = 0.0;
};

struct SphereOptimizerResult {
  std::vector<StateVector> points;
  double value = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  bool converged = false;  // grad_tol or target reached
  std::vector<IterationRecord> trace;
};

SphereOptimizerResult minimize_on_spheres(const SphereObjective& objective,
                                          std::vector<StateVector> start,
                                          const SphereOptimizerOptions& opts, int restart_id = 0);

// Multiplies by a phase so the first coordinate with modulus above 1e-12 is
// real and positive.
void fix_phase_gauge(StateVector& v);

}  // namespace tightpovm
