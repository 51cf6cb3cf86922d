#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's numerical kernels: loops are written out over plain complex
// arithmetic so that a bug in the library cannot hide in its own oracle.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "tightpovm/linops.hpp"
#include "tightpovm/rng.hpp"

namespace oracle {

using tightpovm::cplx;
using tightpovm::Operator;
using tightpovm::StateVector;

inline cplx inner(const StateVector& a, const StateVector& b) {
  cplx s = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) s += std::conj(a(i)) * b(i);
  return s;
}

inline double frame_potential(const std::vector<StateVector>& pts, const std::vector<double>& w, int t) {
  double s = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) {
      s += w[i] * w[j] * std::pow(std::norm(inner(pts[i], pts[j])), t);
    }
  }
  return s;
}

// 1 / binom(d+t-1, t) from factorials.
inline double welch_bound(int d, int t) {
  return std::tgamma(t + 1.0) * std::tgamma(static_cast<double>(d)) / std::tgamma(static_cast<double>(d + t));
}

// Qubit state with Bloch vector n (unit length).
inline StateVector bloch_state(double nx, double ny, double nz) {
  const double theta = std::acos(nz);
  const double phi = std::atan2(ny, nx);
  StateVector v(2);
  v << std::cos(theta / 2.0), std::polar(std::sin(theta / 2.0), phi);
  return v;
}

inline std::vector<StateVector> tetrahedron() {
  const double s = 1.0 / std::sqrt(3.0);
  return {bloch_state(s, s, s), bloch_state(s, -s, -s), bloch_state(-s, s, -s), bloch_state(-s, -s, s)};
}

inline std::vector<StateVector> octahedron() {
  return {bloch_state(0, 0, 1),  bloch_state(0, 0, -1), bloch_state(1, 0, 0),
          bloch_state(-1, 0, 0), bloch_state(0, 1, 0),  bloch_state(0, -1, 0)};
}

// Superoperator sum_x tau |P)(P| entry by entry, column-stacking index i + d j.
inline Eigen::MatrixXcd superoperator(const std::vector<Operator>& elements) {
  const auto d = elements.front().rows();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d * d, d * d);
  for (const auto& f : elements) {
    const double tau = f.trace().real();
    if (tau <= 0.0) continue;
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index k = 0; k < d; ++k)
          for (Eigen::Index l = 0; l < d; ++l) m(i + d * j, k + d * l) += f(i, j) * std::conj(f(k, l)) / tau;
  }
  return m;
}

// (I + SWAP) / 2 on C^d (x) C^d, first factor most significant.
inline Eigen::MatrixXcd sym2(int d) {
  const int n = d * d;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      m(a * d + b, a * d + b) += 0.5;
      m(b * d + a, a * d + b) += 0.5;
    }
  return m;
}

// Central-difference directional derivative of f along delta at x.
inline double directional_derivative(const std::function<double(const std::vector<StateVector>&)>& f,
                                     std::vector<StateVector> x, const std::vector<StateVector>& delta,
                                     double h = 1e-6) {
  auto plus = x;
  auto minus = x;
  for (std::size_t k = 0; k < x.size(); ++k) {
    plus[k] += h * delta[k];
    minus[k] -= h * delta[k];
  }
  return (f(plus) - f(minus)) / (2.0 * h);
}

// Random Hermitian operator with Gaussian entries.
inline Operator random_hermitian(int d, tightpovm::Rng& rng) {
  Operator g(d, d);
  for (int c = 0; c < d; ++c) g.col(c) = tightpovm::complex_gaussian(d, rng);
  return (g + g.adjoint()) / 2.0;
}

}  // namespace oracle
