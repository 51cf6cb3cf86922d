#include "tightpovm/designs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tightpovm/errors.hpp"
#include "tightpovm/rng.hpp"

namespace tightpovm {

WeightedDesign::WeightedDesign(std::vector<StateVector> points, std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
  if (points_.empty()) throw PreconditionError("WeightedDesign: at least one point required");
  if (weights_.size() != points_.size()) {
    throw DimensionMismatch("WeightedDesign: " + std::to_string(points_.size()) + " points but " +
                            std::to_string(weights_.size()) + " weights");
  }
  dim_ = static_cast<int>(points_.front().size());
  if (dim_ < 1) throw PreconditionError("WeightedDesign: empty vectors");
  for (auto& p : points_) {
    if (p.size() != dim_) throw DimensionMismatch("WeightedDesign: points of different dimension");
    const double n = p.norm();
    if (!(n > 0.0) || !std::isfinite(n)) throw PreconditionError("WeightedDesign: zero or non-finite point");
    p /= n;
    fix_phase_gauge(p);
  }
  double total = 0.0;
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) throw PreconditionError("WeightedDesign: weights must be positive");
    total += w;
  }
  for (double& w : weights_) w /= total;
}

WeightedDesign WeightedDesign::uniform(std::vector<StateVector> points) {
  std::vector<double> w(points.size(), 1.0);
  return {std::move(points), std::move(w)};
}

double frame_potential(const WeightedDesign& d, int t, ExecutionPolicy policy) {
  if (t < 1) throw PreconditionError("frame_potential: t must be >= 1");
  return kernels::frame_potential(d.points(), d.weights(), t, policy);
}

double welch_bound(int dim, int t) {
  if (dim < 1 || t < 1) throw PreconditionError("welch_bound: need d, t >= 1");
  return 1.0 / static_cast<double>(binomial(dim + t - 1, t));
}

std::size_t design_size_bound(int dim, int t) {
  if (dim < 1 || t < 1) throw PreconditionError("design_size_bound: need d, t >= 1");
  const int up = (t + 1) / 2;
  const int down = t / 2;
  return binomial(dim + up - 1, up) * binomial(dim + down - 1, down);
}

DesignReport is_t_design(const WeightedDesign& d, int t, double tol) {
  DesignReport r;
  r.t = t;
  r.potential = frame_potential(d, t);
  r.bound = welch_bound(d.dim(), t);
  r.gap = r.potential - r.bound;
  r.is_design = r.gap <= tol;
  r.near_design = r.gap <= std::max(tol, kNearDesignTol);
  r.size_bound = design_size_bound(d.dim(), t);
  if (d.size() >= 2) r.equiangular = classify_equiangular(d);
  return r;
}

Eigen::MatrixXcd moment_operator(const WeightedDesign& d, int t, const LinopsConfig& cfg) {
  if (t < 1) throw PreconditionError("moment_operator: t must be >= 1");
  std::size_t n = 1;
  for (int i = 0; i < t; ++i) {
    n *= static_cast<std::size_t>(d.dim());
    if (n > cfg.max_tensor_dim) {
      throw SizeLimitExceeded("moment_operator: d^t exceeds limit " + std::to_string(cfg.max_tensor_dim));
    }
  }
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t i = 0; i < d.size(); ++i) {
    const Eigen::VectorXcd v = tensor_power(d.points()[i], t);
    m.noalias() += d.weights()[i] * (v * v.adjoint());
  }
  return m;
}

double moment_deviation(const WeightedDesign& d, int t, const LinopsConfig& cfg) {
  const auto sym = sym_projector(d.dim(), t, cfg);
  const double norm = static_cast<double>(binomial(d.dim() + t - 1, t));
  return (moment_operator(d, t, cfg) - sym.matrix / norm).norm();
}

std::optional<double> classify_equiangular(const WeightedDesign& d, double tol) {
  if (d.size() < 2) return std::nullopt;
  const double w0 = d.weights().front();
  for (double w : d.weights()) {
    if (std::abs(w - w0) > tol) return std::nullopt;
  }
  double lo = 1.0, hi = 0.0, sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      const double c = std::norm(d.points()[i].dot(d.points()[j]));
      lo = std::min(lo, c);
      hi = std::max(hi, c);
      sum += c;
      ++pairs;
    }
  }
  if (hi - lo > tol) return std::nullopt;
  return sum / static_cast<double>(pairs);
}

namespace {

// Euclidean projection onto the probability simplex, floored so every weight
// stays strictly positive.
std::vector<double> project_simplex(std::vector<double> v) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0, theta = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    cumulative += u[i];
    const double candidate = (cumulative - 1.0) / static_cast<double>(i + 1);
    if (u[i] - candidate > 0.0) theta = candidate;
  }
  double total = 0.0;
  for (double& x : v) {
    x = std::max(x - theta, 1e-12);
    total += x;
  }
  for (double& x : v) x /= total;
  return v;
}

struct RestartOutcome {
  std::vector<StateVector> points;
  std::vector<double> weights;
  double potential = 0.0;
  std::vector<IterationRecord> trace;
};

RestartOutcome run_restart(int dim, int n, std::uint64_t seed, int restart, const SearchOptions& opts,
                           ExecutionPolicy inner) {
  Rng rng(child_seed(seed, static_cast<std::uint64_t>(restart)));
  std::vector<StateVector> start(n);
  for (auto& p : start) p = complex_gaussian(dim, rng);

  RestartOutcome out;
  out.weights.assign(n, 1.0 / n);
  const double bound = welch_bound(dim, 2);

  SphereOptimizerOptions sopts;
  sopts.target = bound;
  sopts.target_tol = opts.certify_tol * 1e-4;

  auto point_objective = [&](const std::vector<double>& w) {
    return [&, w](std::span<const StateVector> pts, std::vector<StateVector>* grad) {
      if (grad) kernels::frame_potential_gradient(pts, w, 2, *grad, inner);
      return kernels::frame_potential(pts, w, 2, inner);
    };
  };

  if (!opts.optimize_weights) {
    sopts.max_iters = opts.max_iters;
    auto res = minimize_on_spheres(point_objective(out.weights), std::move(start), sopts, restart);
    out.points = std::move(res.points);
    out.potential = res.value;
    out.trace = std::move(res.trace);
    return out;
  }

  // Alternate point descent with simplex-projected weight steps.
  const int rounds = std::max(1, opts.weight_rounds);
  sopts.max_iters = std::max(1, opts.max_iters / rounds);
  std::vector<StateVector> pts = std::move(start);
  std::vector<double> wgrad;
  double value = 0.0;
  for (int round = 0; round < rounds; ++round) {
    auto res = minimize_on_spheres(point_objective(out.weights), std::move(pts), sopts, restart);
    pts = std::move(res.points);
    value = res.value;
    for (auto& rec : res.trace) out.trace.push_back(rec);

    double step = 1.0;
    for (int inner_it = 0; inner_it < 50; ++inner_it) {
      kernels::serial::frame_potential_weight_gradient(pts, out.weights, 2, wgrad);
      bool moved = false;
      for (int h = 0; h < 40; ++h) {
        std::vector<double> trial(out.weights.size());
        for (std::size_t k = 0; k < trial.size(); ++k) trial[k] = out.weights[k] - step * wgrad[k];
        trial = project_simplex(std::move(trial));
        const double tv = kernels::frame_potential(pts, trial, 2, inner);
        if (tv < value) {
          out.weights = std::move(trial);
          value = tv;
          moved = true;
          step *= 2.0;
          break;
        }
        step *= 0.5;
      }
      if (!moved) break;
    }
    if (value <= bound + sopts.target_tol) break;
  }
  out.points = std::move(pts);
  out.potential = value;
  return out;
}

}  // namespace

SearchResult search_2design(int dim, int n, std::uint64_t seed, const SearchOptions& opts) {
  if (dim < 1) throw PreconditionError("search_2design: dimension must be >= 1");
  if (n < dim * dim) {
    throw PreconditionError("search_2design: a 2-design in C^" + std::to_string(dim) + " needs at least " +
                            std::to_string(dim * dim) + " points, got " + std::to_string(n));
  }
  if (opts.restarts < 1) throw PreconditionError("search_2design: restarts must be >= 1");

  const auto restarts = static_cast<std::size_t>(opts.restarts);
  std::vector<RestartOutcome> outcomes(restarts);
  std::vector<double> potentials(restarts);
  const ExecutionPolicy inner =
      (opts.policy == ExecutionPolicy::parallel && restarts > 1) ? ExecutionPolicy::serial : opts.policy;
  kernels::map_indexed(
      [&](std::size_t r) {
        outcomes[r] = run_restart(dim, n, seed, static_cast<int>(r), opts, inner);
        return outcomes[r].potential;
      },
      potentials, opts.policy);

  std::size_t best = 0;
  for (std::size_t r = 1; r < restarts; ++r) {
    if (potentials[r] < potentials[best]) best = r;
  }

  std::vector<IterationRecord> trace;
  for (const auto& o : outcomes) trace.insert(trace.end(), o.trace.begin(), o.trace.end());

  WeightedDesign design(std::move(outcomes[best].points), std::move(outcomes[best].weights));
  DesignReport report = is_t_design(design, 2, opts.certify_tol);
  const bool certified = report.is_design;
  return {std::move(design), report, certified, static_cast<int>(best), seed, std::move(trace)};
}

}  // namespace tightpovm
