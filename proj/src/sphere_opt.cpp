#include "tightpovm/sphere_opt.hpp"

#include <cmath>

#include "tightpovm/errors.hpp"

namespace tightpovm {

namespace {

// Remove the radial component: g - Re<x, g> x.
void project_tangent(std::span<const StateVector> pts, std::vector<StateVector>& grad) {
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const double radial = pts[k].dot(grad[k]).real();
    grad[k] -= radial * pts[k];
  }
}

double squared_norm(const std::vector<StateVector>& vs) {
  double s = 0.0;
  for (const auto& v : vs) s += v.squaredNorm();
  return s;
}

}  // namespace

void fix_phase_gauge(StateVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    if (mag > 1e-12) {
      v *= std::conj(v(i)) / mag;
      v(i) = cplx(v(i).real(), 0.0);
      return;
    }
  }
}

SphereOptimizerResult minimize_on_spheres(const SphereObjective& objective,
                                          std::vector<StateVector> start,
                                          const SphereOptimizerOptions& opts, int restart_id) {
  if (start.empty()) throw PreconditionError("minimize_on_spheres: no points");
  for (auto& p : start) {
    const double n = p.norm();
    if (!(n > 0.0)) throw PreconditionError("minimize_on_spheres: zero starting vector");
    p /= n;
  }

  SphereOptimizerResult res;
  res.points = std::move(start);
  std::vector<StateVector> grad, trial(res.points.size()), trial_grad;
  double value = objective(res.points, &grad);
  project_tangent(res.points, grad);
  double gnorm2 = squared_norm(grad);
  double step = opts.initial_step;

  auto reached_target = [&](double v) { return opts.target && v <= *opts.target + opts.target_tol; };

  int it = 0;
  for (; it < opts.max_iters; ++it) {
    if (std::sqrt(gnorm2) < opts.grad_tol || reached_target(value)) {
      res.converged = true;
      break;
    }
    if (opts.log_every > 0 && it % opts.log_every == 0) {
      res.trace.push_back({restart_id, it, value, std::sqrt(gnorm2), step});
    }

    bool accepted = false;
    double trial_value = value;
    for (int halvings = 0; halvings < opts.min_step_exponent; ++halvings) {
      for (std::size_t k = 0; k < res.points.size(); ++k) {
        trial[k] = res.points[k] - step * grad[k];
        trial[k].normalize();
      }
      trial_value = objective(trial, nullptr);
      if (trial_value <= value - opts.armijo * step * gnorm2) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      // No descent along the gradient at machine precision: a stationary point.
      res.converged = true;
      break;
    }

    res.points.swap(trial);
    value = objective(res.points, &grad);
    project_tangent(res.points, grad);
    gnorm2 = squared_norm(grad);
    step *= 2.0;
  }
  if (it >= opts.max_iters && (std::sqrt(gnorm2) < opts.grad_tol || reached_target(value))) {
    res.converged = true;
  }

  res.value = value;
  res.grad_norm = std::sqrt(gnorm2);
  res.iterations = it;
  res.trace.push_back({restart_id, it, value, res.grad_norm, step});
  return res;
}

}  // namespace tightpovm
