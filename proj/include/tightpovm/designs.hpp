#pragma once

// Weighted complex projective t-designs: frame potentials, Welch bounds,
// moment-operator checks and a numerical 2-design search.

#include <cstdint>
#include <optional>
#include <vector>

#include "tightpovm/kernels.hpp"
#include "tightpovm/linops.hpp"
#include "tightpovm/sphere_opt.hpp"

namespace tightpovm {

// Finite weighted set of unit vectors in C^d. The constructor normalizes
// every point, fixes its phase gauge, and normalizes the weights to sum 1.
class WeightedDesign {
 public:
  WeightedDesign(std::vector<StateVector> points, std::vector<double> weights);
  static WeightedDesign uniform(std::vector<StateVector> points);

  int dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<StateVector>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  int dim_ = 0;
  std::vector<StateVector> points_;
  std::vector<double> weights_;
};

struct DesignReport {
  int t = 0;
  double potential = 0.0;
  double bound = 0.0;
  double gap = 0.0;  // potential - bound
  bool is_design = false;
  bool near_design = false;  // gap within the looser reporting threshold
  std::size_t size_bound = 0;
  std::optional<double> equiangular;  // common squared overlap, when equiangular
};

// Default thresholds on the potential gap.
inline constexpr double kDesignCertifyTol = 1e-8;
inline constexpr double kNearDesignTol = 1e-6;

double frame_potential(const WeightedDesign& d, int t,
                       ExecutionPolicy policy = ExecutionPolicy::parallel);

double welch_bound(int dim, int t);

std::size_t design_size_bound(int dim, int t);

DesignReport is_t_design(const WeightedDesign& d, int t, double tol = kDesignCertifyTol);

// sum_x w(x) pi(x)^{(x) t}
Eigen::MatrixXcd moment_operator(const WeightedDesign& d, int t, const LinopsConfig& cfg = {});

// Frobenius distance between the moment operator and Pi_sym / binom(d+t-1, t).
// An independent design certificate that never touches the frame potential.
double moment_deviation(const WeightedDesign& d, int t, const LinopsConfig& cfg = {});

std::optional<double> classify_equiangular(const WeightedDesign& d, double tol = 1e-9);

struct SearchOptions {
  int max_iters = 20000;
  int restarts = 8;
  double certify_tol = kDesignCertifyTol;
  bool optimize_weights = false;
  int weight_rounds = 20;  // alternating point/weight rounds when optimize_weights
  ExecutionPolicy policy = ExecutionPolicy::parallel;
};

struct SearchResult {
  WeightedDesign design;
  DesignReport report;
  bool certified = false;
  int best_restart = 0;
  std::uint64_t seed = 0;
  std::vector<IterationRecord> trace;
};

// Minimizes the t = 2 frame potential over n unit vectors in C^d. Restart r
// starts from Gaussian points drawn with child_seed(seed, r). The winner is
// the lowest potential, ties broken by the lower restart index.
SearchResult search_2design(int dim, int n, std::uint64_t seed, const SearchOptions& opts = {});

}  // namespace tightpovm
