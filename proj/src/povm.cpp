#include "tightpovm/povm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tightpovm/errors.hpp"

namespace tightpovm {

DiscretePOVM::DiscretePOVM(std::vector<Operator> elements, std::vector<std::string> labels)
    : elements_(std::move(elements)), labels_(std::move(labels)) {
  if (elements_.empty()) throw PreconditionError("DiscretePOVM: at least one element required");
  dim_ = static_cast<int>(elements_.front().rows());
  if (dim_ < 1) throw PreconditionError("DiscretePOVM: empty operator");
  for (const auto& e : elements_) {
    if (e.rows() != dim_ || e.cols() != dim_) {
      throw DimensionMismatch("DiscretePOVM: elements must all be " + std::to_string(dim_) + "x" +
                              std::to_string(dim_));
    }
    if (!e.allFinite()) throw PreconditionError("DiscretePOVM: non-finite entry");
  }
  if (labels_.empty()) {
    labels_.reserve(elements_.size());
    for (std::size_t i = 0; i < elements_.size(); ++i) labels_.push_back(std::to_string(i));
  } else if (labels_.size() != elements_.size()) {
    throw DimensionMismatch("DiscretePOVM: " + std::to_string(labels_.size()) + " labels for " +
                            std::to_string(elements_.size()) + " elements");
  }
}

PovmDiagnostics validate_povm(const DiscretePOVM& f, double tol) {
  PovmDiagnostics diag;
  Operator sum = Operator::Zero(f.dim(), f.dim());
  for (const auto& e : f.elements()) {
    diag.hermiticity_residual = std::max(diag.hermiticity_residual, (e - e.adjoint()).cwiseAbs().maxCoeff());
    diag.min_eigenvalues.push_back(min_eigenvalue(e));
    sum += e;
  }
  diag.sum_residual = (sum - Operator::Identity(f.dim(), f.dim())).norm();
  const double min_eig = *std::min_element(diag.min_eigenvalues.begin(), diag.min_eigenvalues.end());
  diag.ok = min_eig >= -tol && diag.sum_residual <= tol && diag.hermiticity_residual <= tol;
  return diag;
}

Povd povd_decompose(const DiscretePOVM& f) {
  Povd out;
  out.dim = f.dim();
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double tau = f.elements()[i].trace().real();
    if (tau <= kZeroTraceTol) {
      out.dropped.push_back(i);
      out.warnings.push_back("outcome '" + f.labels()[i] + "' has zero trace and was dropped");
      continue;
    }
    out.taus.push_back(tau);
    out.densities.push_back(hermitian_part(f.elements()[i]) / tau);
    out.outcomes.push_back(i);
  }
  return out;
}

SuperOp povm_superoperator(const Povd& povd) {
  const int d = povd.dim;
  Eigen::MatrixXcd k(d * d, static_cast<Eigen::Index>(povd.taus.size()));
  for (std::size_t i = 0; i < povd.taus.size(); ++i) {
    k.col(static_cast<Eigen::Index>(i)) = std::sqrt(povd.taus[i]) * vectorize(povd.densities[i]);
  }
  Eigen::MatrixXcd m = k * k.adjoint();
  m = 0.5 * (m + m.adjoint()).eval();
  return {d, std::move(m)};
}

SuperOp povm_superoperator(const DiscretePOVM& f) { return povm_superoperator(povd_decompose(f)); }

namespace {

IcCheck ic_from_superop(const SuperOp& frame, std::size_t outcomes, double tol) {
  const auto spec = herm_eig(frame);
  IcCheck out;
  out.lambda_min = spec.values(0);
  out.lambda_max = spec.values(spec.values.size() - 1);
  const auto d2 = static_cast<std::size_t>(frame.dim()) * static_cast<std::size_t>(frame.dim());
  out.is_ic = outcomes >= d2 && out.lambda_min > tol * out.lambda_max;
  return out;
}

}  // namespace

IcCheck ic_check(const DiscretePOVM& f, double tol) {
  const auto povd = povd_decompose(f);
  return ic_from_superop(povm_superoperator(povd), povd.taus.size(), tol);
}

ReconstructionOvd canonical_reconstruction(const DiscretePOVM& f, double tol) {
  const auto povd = povd_decompose(f);
  const auto frame = povm_superoperator(povd);
  const auto ic = ic_from_superop(frame, povd.taus.size(), tol);
  if (!ic.is_ic) {
    throw NotInformationallyComplete("canonical_reconstruction: POVM is not informationally complete "
                                     "(smallest superoperator eigenvalue " +
                                     std::to_string(ic.lambda_min) + ", " +
                                     std::to_string(povd.taus.size()) + " outcomes)");
  }
  LinopsConfig cfg;
  cfg.spectral_threshold = tol;
  const SuperOp inverse = superop_inverse(frame, cfg);

  ReconstructionOvd r;
  r.dim = f.dim();
  r.taus = povd.taus;
  r.outcomes = povd.outcomes;
  r.total_outcomes = f.size();
  r.operators.reserve(povd.densities.size());
  for (const auto& p : povd.densities) r.operators.push_back(hermitian_part(inverse.apply(p)));
  return r;
}

double dual_frame_residual(const Povd& povd, const std::vector<Operator>& q) {
  if (q.size() != povd.densities.size()) {
    throw DimensionMismatch("dual_frame_residual: " + std::to_string(q.size()) + " dual operators for " +
                            std::to_string(povd.densities.size()) + " outcomes");
  }
  const int d = povd.dim;
  Eigen::MatrixXcd acc = -Eigen::MatrixXcd::Identity(d * d, d * d);
  for (std::size_t i = 0; i < q.size(); ++i) {
    acc.noalias() += povd.taus[i] * vectorize(q[i]) * vectorize(povd.densities[i]).adjoint();
  }
  return acc.norm();
}

namespace {

// Selects the retained-outcome entries of a probability vector given either
// per-retained or per-outcome indexing.
std::vector<double> retained_probabilities(const std::vector<std::size_t>& outcomes,
                                           std::size_t total_outcomes,
                                           const std::vector<double>& probabilities) {
  if (probabilities.size() == outcomes.size()) return probabilities;
  if (probabilities.size() == total_outcomes) {
    std::vector<double> out;
    out.reserve(outcomes.size());
    for (auto idx : outcomes) out.push_back(probabilities[idx]);
    return out;
  }
  throw DimensionMismatch("reconstruct: " + std::to_string(probabilities.size()) +
                          " probabilities for " + std::to_string(outcomes.size()) + " retained of " +
                          std::to_string(total_outcomes) + " outcomes");
}

}  // namespace

Operator reconstruct(const ReconstructionOvd& r, const std::vector<double>& probabilities) {
  const auto p = retained_probabilities(r.outcomes, r.total_outcomes, probabilities);
  Operator rho = Operator::Zero(r.dim, r.dim);
  for (std::size_t i = 0; i < p.size(); ++i) rho += p[i] * r.operators[i];
  return hermitian_part(rho);
}

Operator reconstruct(const DiscretePOVM& f, const std::vector<double>& probabilities) {
  return reconstruct(canonical_reconstruction(f), probabilities);
}

std::vector<double> born_probabilities(const DiscretePOVM& f, const Operator& rho) {
  if (rho.rows() != f.dim() || rho.cols() != f.dim()) {
    throw DimensionMismatch("born_probabilities: state dimension does not match POVM");
  }
  std::vector<double> p;
  p.reserve(f.size());
  for (const auto& e : f.elements()) p.push_back((e * rho).trace().real());
  return p;
}

namespace {

double frame_constant_of(const Povd& povd) {
  const int d = povd.dim;
  if (d < 2) throw PreconditionError("frame_constant: needs d >= 2");
  double s = 0.0;
  for (std::size_t i = 0; i < povd.taus.size(); ++i) s += povd.taus[i] * povd.densities[i].squaredNorm();
  return (s - 1.0) / (static_cast<double>(d) * d - 1.0);
}

}  // namespace

double frame_constant(const DiscretePOVM& f) { return frame_constant_of(povd_decompose(f)); }

TightnessReport tightness_check(const DiscretePOVM& f, double tol) {
  const auto povd = povd_decompose(f);
  const int d = povd.dim;
  const double dd = static_cast<double>(d);
  const auto frame = povm_superoperator(povd);
  const auto ids = identity_superops(d);

  TightnessReport r;
  r.a = frame_constant_of(povd);
  const SuperOp sandwiched = ids.traceless * frame * ids.traceless;
  r.residual = (sandwiched - ids.traceless * cplx(r.a)).matrix().norm();
  r.is_tight = r.residual <= tol && r.a > tol;
  const SuperOp rank_one_target = (ids.identity + ids.trace_map) * cplx(1.0 / (dd + 1.0));
  r.rank_one_residual = (frame - rank_one_target).matrix().norm();
  r.is_rank_one_tight = r.rank_one_residual <= tol;

  const auto ic = ic_from_superop(frame, povd.taus.size(), 1e-10);
  r.is_ic = ic.is_ic;
  r.lambda_min = ic.lambda_min;
  if (ic.is_ic) {
    const auto spec = herm_eig(frame);
    r.trace_inverse = spec.values.cwiseInverse().sum();
  }
  r.trace_f = frame.trace().real();
  r.rank_one = std::abs(r.trace_f - dd) <= tol;

  // Direct double sum, independent of the superoperator route.
  const std::size_t n = povd.taus.size();
  double lhs = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double overlap = hs_inner(povd.densities[i], povd.densities[j]).real();
      lhs += povd.taus[i] * povd.taus[j] * overlap * overlap;
    }
  }
  r.frame_bound_lhs = lhs;
  r.frame_bound_rhs = 1.0 + (r.trace_f - 1.0) * (r.trace_f - 1.0) / (dd * dd - 1.0);
  r.rank_one_bound = 2.0 * dd / (dd + 1.0);
  r.trace_inverse_bound = dd * (dd * (dd + 1.0) - 1.0);
  return r;
}

Operator tight_reconstruct(const DiscretePOVM& f, const std::vector<double>& probabilities, double tol) {
  const auto report = tightness_check(f, tol);
  if (!report.is_tight) {
    throw NotTight("tight_reconstruct: POVM is not tight (residual " + std::to_string(report.residual) +
                   ", a = " + std::to_string(report.a) + ")");
  }
  const auto povd = povd_decompose(f);
  const auto p = retained_probabilities(povd.outcomes, f.size(), probabilities);
  const int d = f.dim();
  const double a = report.a;
  Operator acc = Operator::Zero(d, d);
  for (std::size_t i = 0; i < p.size(); ++i) acc += p[i] * povd.densities[i];
  return hermitian_part(acc / a - ((1.0 - a) / (a * d)) * Operator::Identity(d, d));
}

std::optional<WeightedDesign> outcome_design(const DiscretePOVM& f, double tol) {
  const auto povd = povd_decompose(f);
  std::vector<StateVector> points;
  std::vector<double> weights;
  for (std::size_t i = 0; i < povd.taus.size(); ++i) {
    const Operator& p = povd.densities[i];
    // A unit-trace PSD operator is a rank-one projector iff tr P^2 = 1.
    if (std::abs(p.squaredNorm() - 1.0) > tol) return std::nullopt;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(p);
    points.push_back(solver.eigenvectors().col(p.rows() - 1));
    weights.push_back(povd.taus[i] / f.dim());
  }
  return WeightedDesign(std::move(points), std::move(weights));
}

DesignEquivalence design_equivalence(const DiscretePOVM& f, double tol) {
  DesignEquivalence out;
  const auto design = outcome_design(f, tol);
  out.rank_one = design.has_value();
  if (!design) return out;
  out.welch = is_t_design(*design, 2, tol);
  out.welch_is_design = out.welch->is_design;
  // ||M - Pi/b||_F^2 equals the potential gap, so the matching threshold is sqrt(tol).
  out.moment_deviation = moment_deviation(*design, 2);
  out.moment_is_design = *out.moment_deviation <= std::sqrt(tol);
  out.certificates_agree = out.welch_is_design == out.moment_is_design;
  return out;
}

}  // namespace tightpovm
