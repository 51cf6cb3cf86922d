#include "tightpovm/tomo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tightpovm/errors.hpp"

namespace tightpovm {

namespace {

constexpr double kClampTol = 1e-14;
constexpr double kNormTol = 1e-10;

std::vector<double> checked_probabilities(const DiscretePOVM& f, const Operator& rho) {
  auto p = born_probabilities(f, rho);
  double total = 0.0;
  for (double& x : p) {
    if (x < 0.0) {
      if (x < -kClampTol) {
        throw PreconditionError("sample_outcomes: negative outcome probability " + std::to_string(x) +
                                " (state or POVM is not positive)");
      }
      x = 0.0;
    }
    total += x;
  }
  if (std::abs(total - 1.0) > kNormTol) {
    throw PreconditionError("sample_outcomes: outcome probabilities sum to " + std::to_string(total));
  }
  for (double& x : p) x /= total;
  return p;
}

void validate_state(const Operator& rho, int dim, const char* where) {
  if (rho.rows() != dim || rho.cols() != dim) {
    throw DimensionMismatch(std::string(where) + ": state dimension does not match POVM");
  }
  if (!is_hermitian(rho, 1e-10)) throw PreconditionError(std::string(where) + ": state is not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > 1e-10) {
    throw PreconditionError(std::string(where) + ": state does not have unit trace");
  }
  if (min_eigenvalue(rho) < -1e-10) throw PreconditionError(std::string(where) + ": state is not positive");
}

void require_dual(const Povd& povd, const DualFrame& q, const char* where) {
  const double residual = dual_frame_residual(povd, q);
  if (!(residual <= kDualTol)) {
    throw NotDualFrame(std::string(where) + ": operators are not a dual frame (residual " +
                       std::to_string(residual) + ")");
  }
}

}  // namespace

OutcomeCounts sample_outcomes(const DiscretePOVM& f, const Operator& rho, long long n, Rng& rng) {
  if (n < 1) throw PreconditionError("sample_outcomes: N must be >= 1");
  const auto p = checked_probabilities(f, rho);
  std::vector<double> cumulative(p.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    acc += p[i];
    cumulative[i] = acc;
  }
  OutcomeCounts out;
  out.counts.assign(p.size(), 0);
  out.total = n;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const auto last = static_cast<std::ptrdiff_t>(p.size()) - 1;
  for (long long s = 0; s < n; ++s) {
    const double u = unif(rng) * acc;
    auto idx = std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin();
    idx = std::min<std::ptrdiff_t>(idx, last);
    // Never land on a zero-probability outcome through a flat CDF segment.
    while (p[static_cast<std::size_t>(idx)] == 0.0 && idx > 0) --idx;
    ++out.counts[static_cast<std::size_t>(idx)];
  }
  return out;
}

std::vector<double> frequency_estimate(const OutcomeCounts& counts) {
  if (counts.total < 1) throw PreconditionError("frequency_estimate: total must be >= 1");
  std::vector<double> p(counts.counts.size());
  const double n = static_cast<double>(counts.total);
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = static_cast<double>(counts.counts[i]) / n;
  return p;
}

std::vector<double> mub_constrained_estimate(const OutcomeCounts& counts, const MubFamily& family) {
  const auto p = static_cast<std::size_t>(family.p);
  if (counts.counts.size() != p * (p + 1)) {
    throw DimensionMismatch("mub_constrained_estimate: expected " + std::to_string(p * (p + 1)) +
                            " outcomes, got " + std::to_string(counts.counts.size()));
  }
  std::vector<double> out(counts.counts.size());
  for (std::size_t l = 0; l <= p; ++l) {
    long long group = 0;
    for (std::size_t k = 0; k < p; ++k) group += counts.counts[l * p + k];
    if (group < 1) {
      throw PreconditionError("mub_constrained_estimate: basis " + std::to_string(l) + " has no counts");
    }
    const double denom = static_cast<double>(p + 1) * static_cast<double>(group);
    for (std::size_t k = 0; k < p; ++k) out[l * p + k] = static_cast<double>(counts.counts[l * p + k]) / denom;
  }
  return out;
}

DualFrame canonical_dual(const DiscretePOVM& f) { return canonical_reconstruction(f).operators; }

double expected_error(const DiscretePOVM& f, const DualFrame& q, const Operator& rho, long long n) {
  if (n < 1) throw PreconditionError("expected_error: N must be >= 1");
  const auto povd = povd_decompose(f);
  require_dual(povd, q, "expected_error");
  validate_state(rho, f.dim(), "expected_error");
  double delta_p = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double p = (f.elements()[povd.outcomes[i]] * rho).trace().real();
    delta_p += p * q[i].squaredNorm();
  }
  const double purity = (rho * rho).trace().real();
  return (delta_p - purity) / static_cast<double>(n);
}

double delta_tau(const DiscretePOVM& f, const DualFrame& q) {
  const auto povd = povd_decompose(f);
  require_dual(povd, q, "delta_tau");
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) s += povd.taus[i] * q[i].squaredNorm();
  return s;
}

std::optional<PerturbedDual> perturbed_dual(const DiscretePOVM& f, std::uint64_t seed, double scale) {
  const auto povd = povd_decompose(f);
  const int d = f.dim();
  const auto n = static_cast<Eigen::Index>(povd.outcomes.size());
  // Real coefficient vectors c with sum_x c(x) F(x) = 0.
  Eigen::MatrixXd a(2 * d * d, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const OperatorKet v = vectorize(f.elements()[povd.outcomes[static_cast<std::size_t>(i)]]);
    a.col(i).head(d * d) = v.real();
    a.col(i).tail(d * d) = v.imag();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = 1e-10 * std::max(1.0, sv.size() ? sv(0) : 0.0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) rank += sv(i) > cutoff ? 1 : 0;
  const Eigen::Index nullity = n - rank;
  if (nullity == 0) return std::nullopt;

  Rng rng(seed);
  DualFrame q = canonical_dual(f);
  std::vector<Operator> shift(static_cast<std::size_t>(n), Operator::Zero(d, d));
  for (Eigen::Index k = rank; k < n; ++k) {
    const Eigen::VectorXd c = svd.matrixV().col(k);
    Operator b(d, d);
    for (int col = 0; col < d; ++col) b.col(col) = complex_gaussian(d, rng);
    b = hermitian_part(b);
    for (Eigen::Index x = 0; x < n; ++x) shift[static_cast<std::size_t>(x)] += (scale * c(x)) * b;
  }
  PerturbedDual out;
  for (std::size_t x = 0; x < shift.size(); ++x) {
    q[x] += shift[x];
    out.perturbation_energy += povd.taus[x] * shift[x].squaredNorm();
  }
  out.dual = std::move(q);
  return out;
}

TomographyStats run_tomography(const DiscretePOVM& f, const TomographyConfig& cfg, ExecutionPolicy policy) {
  if (cfg.samples < 1) throw PreconditionError("run_tomography: N must be >= 1");
  if (cfg.trials < 1) throw PreconditionError("run_tomography: trials must be >= 1");
  const int d = f.dim();

  const auto recon = canonical_reconstruction(f);  // IC gate
  const auto povd = povd_decompose(f);
  const DualFrame q = cfg.dual ? *cfg.dual : recon.operators;
  require_dual(povd, q, "run_tomography");

  std::optional<MubFamily> family;
  if (cfg.estimator == Estimator::mub_constrained) {
    if (!is_prime(d) || f.size() != static_cast<std::size_t>(d) * (d + 1) || !povd.dropped.empty()) {
      throw PreconditionError("run_tomography: the MUB-constrained estimator needs a mub_povm layout");
    }
    family = MubFamily{d, {}};
  }

  const bool haar = std::holds_alternative<HaarOrbit>(cfg.ensemble);
  Operator base = haar ? std::get<HaarOrbit>(cfg.ensemble).sigma : std::get<FixedState>(cfg.ensemble).rho;
  if (haar && base.size() == 0) base = projector(StateVector::Unit(d, 0));
  validate_state(base, d, "run_tomography");

  auto trial = [&](std::size_t k) {
    Rng rng(child_seed(cfg.seed, k));
    Operator rho = base;
    if (haar) {
      const Operator u = haar_random_unitary(d, rng);
      rho = hermitian_part(u * base * u.adjoint());
    }
    const auto counts = sample_outcomes(f, rho, cfg.samples, rng);
    const auto p_hat = family ? mub_constrained_estimate(counts, *family) : frequency_estimate(counts);
    Operator rho_hat = Operator::Zero(d, d);
    for (std::size_t i = 0; i < q.size(); ++i) rho_hat += p_hat[povd.outcomes[i]] * q[i];
    return (rho - rho_hat).squaredNorm();
  };

  std::vector<double> errors(static_cast<std::size_t>(cfg.trials));
  kernels::map_indexed(trial, errors, policy);

  TomographyStats stats;
  stats.trials = cfg.trials;
  stats.samples = cfg.samples;
  const double t = static_cast<double>(cfg.trials);
  stats.mean_sq_error = kernels::ordered_sum(errors) / t;
  if (cfg.trials > 1) {
    double ss = 0.0;
    for (double e : errors) ss += (e - stats.mean_sq_error) * (e - stats.mean_sq_error);
    stats.std_error = std::sqrt(ss / (t - 1.0) / t);
  }
  if (haar) {
    const double purity = (base * base).trace().real();
    stats.predicted = (delta_tau(f, q) / d - purity) / static_cast<double>(cfg.samples);
  } else {
    stats.predicted = expected_error(f, q, base, cfg.samples);
  }
  if (cfg.keep_per_trial) stats.per_trial = std::move(errors);
  return stats;
}

}  // namespace tightpovm
