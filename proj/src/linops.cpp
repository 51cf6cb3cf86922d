#include "tightpovm/linops.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tightpovm/errors.hpp"

namespace tightpovm {

namespace {

void require_same_dim(const Operator& a, const Operator& b, const char* where) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw DimensionMismatch(std::string(where) + ": operator dimensions differ (" +
                            std::to_string(a.rows()) + " vs " + std::to_string(b.rows()) + ")");
  }
}

}  // namespace

SuperOp::SuperOp(int dim) : dim_(dim), m_(Eigen::MatrixXcd::Zero(dim * dim, dim * dim)) {}

SuperOp::SuperOp(int dim, Eigen::MatrixXcd matrix) : dim_(dim), m_(std::move(matrix)) {
  if (m_.rows() != dim * dim || m_.cols() != dim * dim) {
    throw DimensionMismatch("SuperOp: matrix is not d^2 x d^2 for d = " + std::to_string(dim));
  }
}

Operator SuperOp::apply(const Operator& a) const {
  if (a.rows() != dim_ || a.cols() != dim_) {
    throw DimensionMismatch("SuperOp::apply: operator dimension does not match");
  }
  return devectorize(m_ * vectorize(a));
}

OperatorKet SuperOp::apply(const OperatorKet& ket) const {
  if (ket.size() != m_.cols()) {
    throw DimensionMismatch("SuperOp::apply: ket dimension does not match");
  }
  return m_ * ket;
}

SuperOp& SuperOp::operator+=(const SuperOp& other) {
  if (other.dim_ != dim_) throw DimensionMismatch("SuperOp: dimension mismatch in sum");
  m_ += other.m_;
  return *this;
}

SuperOp& SuperOp::operator-=(const SuperOp& other) {
  if (other.dim_ != dim_) throw DimensionMismatch("SuperOp: dimension mismatch in difference");
  m_ -= other.m_;
  return *this;
}

SuperOp& SuperOp::operator*=(cplx s) {
  m_ *= s;
  return *this;
}

SuperOp operator*(const SuperOp& a, const SuperOp& b) {
  if (a.dim_ != b.dim_) throw DimensionMismatch("SuperOp: dimension mismatch in composition");
  return {a.dim_, a.m_ * b.m_};
}

cplx hs_inner(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "hs_inner");
  return (a.adjoint() * b).trace();
}

double hs_norm_sq(const Operator& a) { return a.squaredNorm(); }

OperatorKet vectorize(const Operator& a) {
  // Eigen storage is column-major, so this is column stacking.
  return Eigen::Map<const OperatorKet>(a.data(), a.size());
}

Operator devectorize(const OperatorKet& v) {
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
  if (d * d != v.size()) {
    throw DimensionMismatch("devectorize: ket length " + std::to_string(v.size()) +
                            " is not a perfect square");
  }
  return Eigen::Map<const Operator>(v.data(), d, d);
}

SuperOp ket_bra(const Operator& left, const Operator& right) {
  require_same_dim(left, right, "ket_bra");
  return {static_cast<int>(left.rows()), vectorize(left) * vectorize(right).adjoint()};
}

SuperOp superop_from_dyads(int dim, const std::vector<Dyad>& terms) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim * dim, dim * dim);
  for (const auto& term : terms) {
    if (term.left.rows() != dim || term.right.rows() != dim) {
      throw DimensionMismatch("superop_from_dyads: term dimension differs from " +
                              std::to_string(dim));
    }
    require_same_dim(term.left, term.right, "superop_from_dyads");
    m.noalias() += term.coefficient * vectorize(term.left) * vectorize(term.right).adjoint();
  }
  return {dim, std::move(m)};
}

IdentitySuperOps identity_superops(int dim) {
  if (dim < 1) throw PreconditionError("identity_superops: dimension must be >= 1");
  const auto n = dim * dim;
  SuperOp identity(dim, Eigen::MatrixXcd::Identity(n, n));
  const OperatorKet id_ket = vectorize(Operator::Identity(dim, dim));
  SuperOp trace_map(dim, id_ket * id_ket.adjoint());
  SuperOp traceless = identity - trace_map * cplx(1.0 / dim);
  return {std::move(identity), std::move(trace_map), std::move(traceless)};
}

std::size_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

SymProjector sym_projector(int dim, int t, const LinopsConfig& cfg) {
  if (dim < 1 || t < 1 || t > 4) {
    throw PreconditionError("sym_projector: need d >= 1 and 1 <= t <= 4");
  }
  std::size_t n = 1;
  for (int i = 0; i < t; ++i) {
    n *= static_cast<std::size_t>(dim);
    if (n > cfg.max_tensor_dim) {
      throw SizeLimitExceeded("sym_projector: d^t exceeds limit " + std::to_string(cfg.max_tensor_dim));
    }
  }

  // Average of the t! factor permutations. Digit 0 is the most significant
  // tensor factor.
  std::vector<int> perm(t);
  std::iota(perm.begin(), perm.end(), 0);
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, n);
  std::vector<int> digits(t), permuted(t);
  std::size_t count = 0;
  do {
    for (std::size_t idx = 0; idx < n; ++idx) {
      std::size_t rem = idx;
      for (int f = t - 1; f >= 0; --f) {
        digits[f] = static_cast<int>(rem % dim);
        rem /= dim;
      }
      for (int f = 0; f < t; ++f) permuted[f] = digits[perm[f]];
      std::size_t out = 0;
      for (int f = 0; f < t; ++f) out = out * dim + permuted[f];
      acc(out, idx) += 1.0;
    }
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  acc /= static_cast<double>(count);
  return {t, dim, std::move(acc)};
}

bool is_hermitian(const Eigen::MatrixXcd& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, m.norm());
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

HermitianSpectrum herm_eig(const SuperOp& s, const LinopsConfig& cfg) {
  const auto& m = s.matrix();
  if (!is_hermitian(m, cfg.hermiticity_tol)) {
    const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
    throw NotHermitian("herm_eig: superoperator is not Hermitian (max deviation " +
                       std::to_string(dev) + ")");
  }
  const Eigen::MatrixXcd sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym);
  return {solver.eigenvalues(), solver.eigenvectors()};
}

SuperOp superop_inverse(const SuperOp& s, const LinopsConfig& cfg) {
  const auto spec = herm_eig(s, cfg);
  const double largest = spec.values.cwiseAbs().maxCoeff();
  const double floor = cfg.spectral_threshold * std::max(largest, 1e-300);
  const double smallest = spec.values(0);
  if (!(smallest > floor)) {
    throw SingularSuperOp("superop_inverse: eigenvalue " + std::to_string(smallest) +
                              " is below threshold " + std::to_string(floor),
                          smallest);
  }
  const Eigen::VectorXd inv = spec.values.cwiseInverse();
  Eigen::MatrixXcd m = spec.eigenvectors * inv.asDiagonal() * spec.eigenvectors.adjoint();
  return {s.dim(), std::move(m)};
}

Operator projector(const StateVector& x) { return x * x.adjoint(); }

Eigen::VectorXcd tensor_power(const StateVector& x, int t) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Ones(1);
  for (int f = 0; f < t; ++f) {
    Eigen::VectorXcd next(out.size() * x.size());
    for (Eigen::Index i = 0; i < out.size(); ++i) next.segment(i * x.size(), x.size()) = out(i) * x;
    out = std::move(next);
  }
  return out;
}

Operator hermitian_part(const Operator& a) { return 0.5 * (a + a.adjoint()); }

double min_eigenvalue(const Operator& hermitian) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian_part(hermitian),
                                                         Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

}  // namespace tightpovm
