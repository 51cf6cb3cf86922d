#pragma once

// Operator / superoperator substrate.
//
// Operators are d x d complex matrices. An operator ket |A) is the
// column-stacked vector of A, so (A|B) = tr(A^dag B) is the ordinary inner
// product of kets. Superoperators are d^2 x d^2 matrices acting on kets
// (the "left-right" action): |E)(F| maps A to E tr(F^dag A).

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace tightpovm {

using cplx = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using OperatorKet = Eigen::VectorXcd;
using StateVector = Eigen::VectorXcd;

struct LinopsConfig {
  // Relative spectral threshold for inverses and rank decisions.
  double spectral_threshold = 1e-10;
  // max|S - S^dag| <= hermiticity_tol * max(1, ||S||_F)
  double hermiticity_tol = 1e-9;
  // Largest d^t accepted for tensor-power operators.
  std::size_t max_tensor_dim = 1024;
};

class SuperOp {
 public:
  SuperOp() = default;
  explicit SuperOp(int dim);
  SuperOp(int dim, Eigen::MatrixXcd matrix);

  int dim() const { return dim_; }
  const Eigen::MatrixXcd& matrix() const { return m_; }

  Operator apply(const Operator& a) const;
  OperatorKet apply(const OperatorKet& ket) const;
  cplx trace() const { return m_.trace(); }

  SuperOp adjoint() const { return {dim_, m_.adjoint()}; }

  SuperOp& operator+=(const SuperOp& other);
  SuperOp& operator-=(const SuperOp& other);
  SuperOp& operator*=(cplx s);

  friend SuperOp operator+(SuperOp a, const SuperOp& b) { return a += b; }
  friend SuperOp operator-(SuperOp a, const SuperOp& b) { return a -= b; }
  friend SuperOp operator*(SuperOp a, cplx s) { return a *= s; }
  friend SuperOp operator*(cplx s, SuperOp a) { return a *= s; }
  friend SuperOp operator*(const SuperOp& a, const SuperOp& b);

 private:
  int dim_ = 0;
  Eigen::MatrixXcd m_;
};

// One term s |left)(right| of a superoperator in left-right form.
struct Dyad {
  cplx coefficient;
  Operator left;
  Operator right;
};

struct IdentitySuperOps {
  SuperOp identity;   // bold I: identity on operator kets
  SuperOp trace_map;  // |I)(I|, maps A to tr(A) I
  SuperOp traceless;  // identity - trace_map / d
};

struct SymProjector {
  int t = 0;
  int dim = 0;
  Eigen::MatrixXcd matrix;
};

struct HermitianSpectrum {
  Eigen::VectorXd values;        // ascending
  Eigen::MatrixXcd eigenvectors;  // column k is the eigenket of values(k)
};

cplx hs_inner(const Operator& a, const Operator& b);
double hs_norm_sq(const Operator& a);

OperatorKet vectorize(const Operator& a);
Operator devectorize(const OperatorKet& v);

SuperOp superop_from_dyads(int dim, const std::vector<Dyad>& terms);
SuperOp ket_bra(const Operator& left, const Operator& right);

IdentitySuperOps identity_superops(int dim);

SymProjector sym_projector(int dim, int t, const LinopsConfig& cfg = {});

HermitianSpectrum herm_eig(const SuperOp& s, const LinopsConfig& cfg = {});
SuperOp superop_inverse(const SuperOp& s, const LinopsConfig& cfg = {});

// |x><x|
Operator projector(const StateVector& x);
// x (x) x (x) ... (t factors), Kronecker ordering with the first factor most
// significant.
Eigen::VectorXcd tensor_power(const StateVector& x, int t);
Operator hermitian_part(const Operator& a);
double min_eigenvalue(const Operator& hermitian);
bool is_hermitian(const Eigen::MatrixXcd& m, double tol);

std::size_t binomial(int n, int k);

}  // namespace tightpovm
