#pragma once

// Per-index bodies shared by the serial and OpenMP kernels. Keeping them in
// one place is what makes the two paths bit-identical.

#include <cmath>
#include <span>

#include "tightpovm/linops.hpp"

namespace tightpovm::kernels::detail {

inline double int_pow(double base, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// w(x_i) sum_y w(y) |<x_i|y>|^{2t}
inline double potential_row(std::span<const StateVector> pts, std::span<const double> w, int t,
                            std::size_t i) {
  double row = 0.0;
  for (std::size_t j = 0; j < pts.size(); ++j) {
    const double overlap = std::norm(pts[i].dot(pts[j]));
    row += w[j] * int_pow(overlap, t);
  }
  return w[i] * row;
}

// 4 t w_k sum_j w_j |g_jk|^{2(t-1)} g_jk x_j, g_jk = <x_j|x_k>
inline StateVector gradient_at(std::span<const StateVector> pts, std::span<const double> w, int t,
                               std::size_t k) {
  StateVector g = StateVector::Zero(pts[k].size());
  for (std::size_t j = 0; j < pts.size(); ++j) {
    const cplx overlap = pts[j].dot(pts[k]);  // Eigen dot conjugates the left operand
    g += (w[j] * int_pow(std::norm(overlap), t - 1)) * overlap * pts[j];
  }
  return (4.0 * t * w[k]) * g;
}

inline double weight_gradient_at(std::span<const StateVector> pts, std::span<const double> w,
                                 int t, std::size_t k) {
  double g = 0.0;
  for (std::size_t j = 0; j < pts.size(); ++j) g += w[j] * int_pow(std::norm(pts[k].dot(pts[j])), t);
  return 2.0 * g;
}

}  // namespace tightpovm::kernels::detail
