#include "tightpovm/clone.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tightpovm/errors.hpp"
#include "tightpovm/rng.hpp"
#include "tightpovm/sphere_opt.hpp"

namespace tightpovm {

CloningStrategy::CloningStrategy(DiscretePOVM povm, std::vector<Operator> estimates)
    : povm_(std::move(povm)), estimates_(std::move(estimates)) {
  if (estimates_.size() != povm_.size()) {
    throw DimensionMismatch("CloningStrategy: " + std::to_string(estimates_.size()) + " estimates for " +
                            std::to_string(povm_.size()) + " outcomes");
  }
  for (std::size_t i = 0; i < estimates_.size(); ++i) {
    const Operator& e = estimates_[i];
    if (e.rows() != povm_.dim() || e.cols() != povm_.dim()) {
      throw DimensionMismatch("CloningStrategy: estimate dimension does not match POVM");
    }
    if (!is_hermitian(e, 1e-10) || std::abs(e.trace().real() - 1.0) > 1e-10 || min_eigenvalue(e) < -1e-10) {
      throw PreconditionError("CloningStrategy: estimate " + std::to_string(i) +
                              " is not a density matrix");
    }
  }
}

CloningStrategy povd_strategy(const DiscretePOVM& f) {
  const int d = f.dim();
  std::vector<Operator> estimates;
  estimates.reserve(f.size());
  for (const auto& e : f.elements()) {
    const double tau = e.trace().real();
    estimates.push_back(tau > kZeroTraceTol ? Operator(hermitian_part(e) / tau)
                                            : Operator(Operator::Identity(d, d) / d));
  }
  return {f, std::move(estimates)};
}

double success_probability(const CloningStrategy& s, const StateVector& psi) {
  if (psi.size() != s.dim()) throw DimensionMismatch("success_probability: state dimension mismatch");
  if (std::abs(psi.squaredNorm() - 1.0) > 1e-10) {
    throw PreconditionError("success_probability: input state is not normalized");
  }
  double f = 0.0;
  for (std::size_t x = 0; x < s.estimates().size(); ++x) {
    const double p = psi.dot(s.povm().elements()[x] * psi).real();
    const double fid = psi.dot(s.estimates()[x] * psi).real();
    f += p * fid;
  }
  return f;
}

double average_fidelity(const CloningStrategy& s) {
  const double d = s.dim();
  double acc = 0.0;
  for (std::size_t x = 0; x < s.estimates().size(); ++x) {
    const Operator& f = s.povm().elements()[x];
    // tau (1 + tr[P rho_hat]) = tr F + tr[F rho_hat]
    acc += f.trace().real() + (f * s.estimates()[x]).trace().real();
  }
  return acc / (d * (d + 1.0));
}

bool is_rank_one_povd_strategy(const CloningStrategy& s, double tol) {
  const auto povd = povd_decompose(s.povm());
  for (std::size_t i = 0; i < povd.outcomes.size(); ++i) {
    const Operator& p = povd.densities[i];
    if (std::abs(p.squaredNorm() - 1.0) > tol) return false;
    if ((s.estimates()[povd.outcomes[i]] - p).norm() > tol) return false;
  }
  return true;
}

FidelityMoments fidelity_variance(const CloningStrategy& s) {
  if (!is_rank_one_povd_strategy(s)) {
    throw PreconditionError("fidelity_variance: closed form needs a rank-one POVM with rho_hat = P");
  }
  const auto povd = povd_decompose(s.povm());
  const double d = s.dim();
  double quartic = 0.0;
  for (std::size_t i = 0; i < povd.taus.size(); ++i) {
    for (std::size_t j = 0; j < povd.taus.size(); ++j) {
      const double overlap = hs_inner(povd.densities[i], povd.densities[j]).real();
      quartic += povd.taus[i] * povd.taus[j] * overlap * overlap;
    }
  }
  FidelityMoments m;
  m.second_moment = 4.0 / (d * (d + 1.0) * (d + 2.0) * (d + 3.0)) * (d * d + 4.0 * d + quartic);
  const double f_av = average_fidelity(s);
  m.variance = m.second_moment - f_av * f_av;
  return m;
}

SampleSummary sample_success_probability(const CloningStrategy& s, long long samples, std::uint64_t seed,
                                         ExecutionPolicy policy) {
  if (samples < 1) throw PreconditionError("sample_success_probability: samples must be >= 1");
  std::vector<double> values(static_cast<std::size_t>(samples));
  kernels::map_indexed(
      [&](std::size_t i) {
        Rng rng(child_seed(seed, i));
        return success_probability(s, haar_random_state(s.dim(), rng));
      },
      values, policy);
  SampleSummary out;
  out.count = samples;
  const double n = static_cast<double>(samples);
  out.mean = kernels::ordered_sum(values) / n;
  out.min = *std::min_element(values.begin(), values.end());
  out.max = *std::max_element(values.begin(), values.end());
  if (samples > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.variance = ss / (n - 1.0);
    out.std_error = std::sqrt(out.variance / n);
  }
  return out;
}

WorstCase worst_case_fidelity(const CloningStrategy& s, long long samples, int refine_iters, std::uint64_t seed,
                              ExecutionPolicy policy) {
  if (samples < 1) throw PreconditionError("worst_case_fidelity: samples must be >= 1");
  const int d = s.dim();
  std::vector<double> values(static_cast<std::size_t>(samples));
  auto draw = [&](std::size_t i) {
    Rng rng(child_seed(seed, i));
    return haar_random_state(d, rng);
  };
  kernels::map_indexed([&](std::size_t i) { return success_probability(s, draw(i)); }, values, policy);
  const auto best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());

  WorstCase out{values[best], draw(best)};
  if (refine_iters <= 0) return out;

  SphereObjective objective = [&s](std::span<const StateVector> pts, std::vector<StateVector>* grad) {
    const StateVector& psi = pts[0];
    double value = 0.0;
    StateVector g = StateVector::Zero(psi.size());
    for (std::size_t x = 0; x < s.estimates().size(); ++x) {
      const StateVector fpsi = s.povm().elements()[x] * psi;
      const StateVector epsi = s.estimates()[x] * psi;
      const double p = psi.dot(fpsi).real();
      const double fid = psi.dot(epsi).real();
      value += p * fid;
      if (grad) g += 2.0 * (fid * fpsi + p * epsi);
    }
    if (grad) grad->assign(1, g);
    return value;
  };
  SphereOptimizerOptions opts;
  opts.max_iters = refine_iters;
  opts.log_every = 0;
  auto res = minimize_on_spheres(objective, {out.state}, opts);
  if (res.value < out.value) {
    out.value = res.value;
    out.state = res.points[0];
  }
  return out;
}

FidelityReport fidelity_report(const CloningStrategy& s, long long samples, int refine_iters, std::uint64_t seed,
                               ExecutionPolicy policy) {
  FidelityReport r;
  r.f_av = average_fidelity(s);
  r.samples = sample_success_probability(s, samples, seed, policy);
  // Worst-case search uses an independent stream family.
  const auto wc = worst_case_fidelity(s, samples, refine_iters, splitmix64(seed ^ 0x5F3759DFULL), policy);
  // inf f <= f_av always, so clamping keeps this a valid upper bound.
  r.f_wc_estimate = std::clamp(wc.value, 0.0, r.f_av);
  if (is_rank_one_povd_strategy(s)) {
    r.variance = fidelity_variance(s).variance;
    r.variance_method = "closed_form";
  } else {
    r.variance = r.samples.variance;
    r.variance_method = "monte_carlo";
  }
  return r;
}

Operator posterior_mean(const CloningStrategy& s, const StateVector& psi) {
  if (!is_rank_one_povd_strategy(s)) {
    throw PreconditionError("posterior_mean: needs a rank-one POVM with rho_hat = P");
  }
  if (psi.size() != s.dim()) throw DimensionMismatch("posterior_mean: state dimension mismatch");
  const int d = s.dim();
  Operator acc = Operator::Zero(d, d);
  for (std::size_t x = 0; x < s.estimates().size(); ++x) {
    const double p = psi.dot(s.povm().elements()[x] * psi).real();
    acc += p * s.estimates()[x];
  }
  return hermitian_part(acc);
}

}  // namespace tightpovm
