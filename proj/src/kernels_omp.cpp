#include <exception>

#include <omp.h>

#include "kernel_rows.hpp"
#include "tightpovm/kernels.hpp"

namespace tightpovm::kernels::omp {

namespace {

// Small problems are not worth a parallel region.
constexpr std::size_t kMinParallelPoints = 16;

}  // namespace

int max_threads() { return omp_get_max_threads(); }

double frame_potential(std::span<const StateVector> points, std::span<const double> weights, int t) {
  const auto n = static_cast<std::ptrdiff_t>(points.size());
  std::vector<double> rows(points.size());
#pragma omp parallel for schedule(static) if (points.size() >= kMinParallelPoints)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    rows[i] = detail::potential_row(points, weights, t, static_cast<std::size_t>(i));
  }
  return ordered_sum(rows);
}

void frame_potential_gradient(std::span<const StateVector> points, std::span<const double> weights,
                              int t, std::vector<StateVector>& grad) {
  const auto n = static_cast<std::ptrdiff_t>(points.size());
  grad.resize(points.size());
#pragma omp parallel for schedule(static) if (points.size() >= kMinParallelPoints)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    grad[k] = detail::gradient_at(points, weights, t, static_cast<std::size_t>(k));
  }
}

void frame_potential_weight_gradient(std::span<const StateVector> points,
                                     std::span<const double> weights, int t,
                                     std::vector<double>& grad) {
  const auto n = static_cast<std::ptrdiff_t>(points.size());
  grad.resize(points.size());
#pragma omp parallel for schedule(static) if (points.size() >= kMinParallelPoints)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    grad[k] = detail::weight_gradient_at(points, weights, t, static_cast<std::size_t>(k));
  }
}

void map_indexed(const IndexedFn& fn, std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(out.size());
  // Exceptions must not escape a parallel region; keep the first one.
  std::exception_ptr first_error;
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[i] = fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(tightpovm_map_indexed_error)
      if (!first_error) first_error = std::current_exception();
    }
  }
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace tightpovm::kernels::omp
