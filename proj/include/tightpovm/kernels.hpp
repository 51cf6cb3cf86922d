#pragma once

// Data-parallel inner loops. Every kernel has a serial reference in
// kernels::serial and an OpenMP version in kernels::omp. Both compute
// per-index partial results into a buffer and reduce it in index order, so
// the two are bit-identical for any thread count.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "tightpovm/linops.hpp"

namespace tightpovm {

enum class ExecutionPolicy { serial, parallel };

namespace kernels {

// fn(i) for i in [0, out.size()), written to out[i].
using IndexedFn = std::function<double(std::size_t)>;

namespace serial {

// sum_{x,y} w(x) w(y) |<x|y>|^{2t}
double frame_potential(std::span<const StateVector> points, std::span<const double> weights, int t);

// Real gradient (2 d/d conj(x_k)) of frame_potential with respect to each point.
void frame_potential_gradient(std::span<const StateVector> points, std::span<const double> weights,
                              int t, std::vector<StateVector>& grad);

// d/dw_k of frame_potential.
void frame_potential_weight_gradient(std::span<const StateVector> points,
                                     std::span<const double> weights, int t,
                                     std::vector<double>& grad);

void map_indexed(const IndexedFn& fn, std::span<double> out);

}  // namespace serial

namespace omp {

double frame_potential(std::span<const StateVector> points, std::span<const double> weights, int t);
void frame_potential_gradient(std::span<const StateVector> points, std::span<const double> weights,
                              int t, std::vector<StateVector>& grad);
void frame_potential_weight_gradient(std::span<const StateVector> points,
                                     std::span<const double> weights, int t,
                                     std::vector<double>& grad);
void map_indexed(const IndexedFn& fn, std::span<double> out);

int max_threads();

}  // namespace omp

// Dispatch helpers used by the higher-level modules.
double frame_potential(std::span<const StateVector> points, std::span<const double> weights, int t,
                       ExecutionPolicy policy);
void frame_potential_gradient(std::span<const StateVector> points, std::span<const double> weights,
                              int t, std::vector<StateVector>& grad, ExecutionPolicy policy);
void map_indexed(const IndexedFn& fn, std::span<double> out, ExecutionPolicy policy);

// In-order sum of a buffer; the only reduction kernels use.
double ordered_sum(std::span<const double> values);

}  // namespace kernels
}  // namespace tightpovm
