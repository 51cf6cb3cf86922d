#include <numeric>

#include "kernel_rows.hpp"
#include "tightpovm/kernels.hpp"

namespace tightpovm::kernels {

double ordered_sum(std::span<const double> values) {
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

namespace serial {

double frame_potential(std::span<const StateVector> points, std::span<const double> weights, int t) {
  std::vector<double> rows(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) rows[i] = detail::potential_row(points, weights, t, i);
  return ordered_sum(rows);
}

void frame_potential_gradient(std::span<const StateVector> points, std::span<const double> weights,
                              int t, std::vector<StateVector>& grad) {
  grad.resize(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) grad[k] = detail::gradient_at(points, weights, t, k);
}

void frame_potential_weight_gradient(std::span<const StateVector> points,
                                     std::span<const double> weights, int t,
                                     std::vector<double>& grad) {
  grad.resize(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) grad[k] = detail::weight_gradient_at(points, weights, t, k);
}

void map_indexed(const IndexedFn& fn, std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = fn(i);
}

}  // namespace serial

double frame_potential(std::span<const StateVector> points, std::span<const double> weights, int t,
                       ExecutionPolicy policy) {
  return policy == ExecutionPolicy::parallel ? omp::frame_potential(points, weights, t)
                                             : serial::frame_potential(points, weights, t);
}

void frame_potential_gradient(std::span<const StateVector> points, std::span<const double> weights,
                              int t, std::vector<StateVector>& grad, ExecutionPolicy policy) {
  if (policy == ExecutionPolicy::parallel) {
    omp::frame_potential_gradient(points, weights, t, grad);
  } else {
    serial::frame_potential_gradient(points, weights, t, grad);
  }
}

void map_indexed(const IndexedFn& fn, std::span<double> out, ExecutionPolicy policy) {
  if (policy == ExecutionPolicy::parallel) {
    omp::map_indexed(fn, out);
  } else {
    serial::map_indexed(fn, out);
  }
}

}  // namespace tightpovm::kernels
