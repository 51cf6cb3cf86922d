#include "tightpovm/constructions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "tightpovm/errors.hpp"
#include "tightpovm/rng.hpp"
#include "tightpovm/sphere_opt.hpp"

namespace tightpovm {

namespace {

cplx root_of_unity(int d, long long power) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(power % d) / d;
  return {std::cos(angle), std::sin(angle)};
}

Operator shift(int d) {
  Operator x = Operator::Zero(d, d);
  for (int j = 0; j < d; ++j) x((j + 1) % d, j) = 1.0;
  return x;
}

Operator clock(int d) {
  Operator z = Operator::Zero(d, d);
  for (int m = 0; m < d; ++m) z(m, m) = root_of_unity(d, m);
  return z;
}

double orbit_dispersion(const StateVector& fiducial) {
  const auto orbit = wh_orbit(fiducial);
  const double target = 1.0 / (fiducial.size() + 1.0);
  double worst = 0.0;
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    for (std::size_t j = i + 1; j < orbit.size(); ++j) {
      worst = std::max(worst, std::abs(std::norm(orbit[i].dot(orbit[j])) - target));
    }
  }
  return worst;
}

DiscretePOVM rank_one_povm(const std::vector<StateVector>& vectors, double scale,
                           std::vector<std::string> labels) {
  std::vector<Operator> elements;
  elements.reserve(vectors.size());
  for (const auto& v : vectors) elements.push_back(scale * projector(v));
  return {std::move(elements), std::move(labels)};
}

}  // namespace

std::vector<Operator> wh_displacements(int dim) {
  if (dim < 2) throw PreconditionError("wh_displacements: dimension must be >= 2");
  const Operator x = shift(dim);
  const Operator z = clock(dim);
  std::vector<Operator> out;
  out.reserve(static_cast<std::size_t>(dim) * dim);
  Operator xj = Operator::Identity(dim, dim);
  for (int j = 0; j < dim; ++j) {
    Operator xjzk = xj;
    for (int k = 0; k < dim; ++k) {
      out.push_back(xjzk);
      xjzk = xjzk * z;
    }
    xj = x * xj;
  }
  return out;
}

std::vector<StateVector> wh_orbit(const StateVector& fiducial) {
  const auto ds = wh_displacements(static_cast<int>(fiducial.size()));
  std::vector<StateVector> out;
  out.reserve(ds.size());
  for (const auto& d : ds) {
    StateVector v = d * fiducial;
    fix_phase_gauge(v);
    out.push_back(std::move(v));
  }
  return out;
}

double orbit_potential(const StateVector& psi) {
  const auto ds = wh_displacements(static_cast<int>(psi.size()));
  double s = 0.0;
  for (std::size_t i = 1; i < ds.size(); ++i) {
    const double m = std::norm(psi.dot(ds[i] * psi));
    s += m * m;
  }
  return s;
}

FiducialVector sic_fiducial(int dim, const FiducialSearchOptions& opts) {
  FiducialVector out;
  out.dim = dim;
  if (dim < 2) throw PreconditionError("sic_fiducial: dimension must be >= 2");
  if (dim == 2) {
    // Bloch vector (1,1,1)/sqrt(3).
    const double theta = std::acos(1.0 / std::sqrt(3.0));
    const double phi = std::numbers::pi / 4.0;
    out.coords = StateVector(2);
    out.coords << std::cos(theta / 2.0), std::polar(std::sin(theta / 2.0), phi);
  } else if (dim == 3) {
    out.coords = StateVector(3);
    out.coords << 0.0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  } else {
    out.source = FiducialSource::numerical;
    out.seed = opts.seed;
    const auto ds = wh_displacements(dim);
    // Real gradient of |f|^4, f = <psi|D psi>: 4 |f|^2 (conj(f) D psi + f D^dag psi).
    SphereObjective objective = [&ds](std::span<const StateVector> pts, std::vector<StateVector>* grad) {
      const StateVector& psi = pts[0];
      double value = 0.0;
      StateVector g = StateVector::Zero(psi.size());
      for (std::size_t i = 1; i < ds.size(); ++i) {
        const StateVector dpsi = ds[i] * psi;
        const cplx f = psi.dot(dpsi);
        const double m = std::norm(f);
        value += m * m;
        if (grad) g += 4.0 * m * (std::conj(f) * dpsi + f * (ds[i].adjoint() * psi));
      }
      if (grad) grad->assign(1, g);
      return value;
    };
    SphereOptimizerOptions sopts;
    sopts.max_iters = opts.max_iters;
    // No value target: the potential is quadratic in the overlap error, so
    // stopping on it would leave overlaps off by ~1e-8. Run to grad_tol.
    sopts.log_every = 0;
    double best_value = std::numeric_limits<double>::infinity();
    for (int r = 0; r < opts.restarts; ++r) {
      Rng rng(child_seed(opts.seed, static_cast<std::uint64_t>(r)));
      auto res = minimize_on_spheres(objective, {complex_gaussian(dim, rng)}, sopts, r);
      if (res.value < best_value) {
        best_value = res.value;
        out.coords = res.points[0];
      }
      if (orbit_dispersion(out.coords) <= opts.certify_tol) break;
    }
  }
  out.coords.normalize();
  fix_phase_gauge(out.coords);
  out.overlap_dispersion = orbit_dispersion(out.coords);
  out.certified = out.overlap_dispersion <= opts.certify_tol;
  return out;
}

DiscretePOVM sic_povm(const FiducialVector& fiducial) {
  if (!fiducial.certified) {
    throw NotCertified("sic_povm: fiducial for d = " + std::to_string(fiducial.dim) +
                       " is not certified (overlap dispersion " +
                       std::to_string(fiducial.overlap_dispersion) + ")");
  }
  const int d = fiducial.dim;
  std::vector<std::string> labels;
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) labels.push_back("D" + std::to_string(j) + "," + std::to_string(k));
  }
  return rank_one_povm(wh_orbit(fiducial.coords), 1.0 / d, std::move(labels));
}

DiscretePOVM sic_povm(int dim, const FiducialSearchOptions& opts) {
  return sic_povm(sic_fiducial(dim, opts));
}

bool is_prime(int n) {
  if (n < 2) return false;
  for (int q = 2; static_cast<long long>(q) * q <= n; ++q) {
    if (n % q == 0) return false;
  }
  return true;
}

MubFamily mub_family(int p) {
  if (!is_prime(p)) throw PreconditionError("mub_family: p must be prime, got " + std::to_string(p));
  MubFamily fam;
  fam.p = p;
  const double norm = 1.0 / std::sqrt(static_cast<double>(p));

  std::vector<StateVector> computational;
  for (int k = 0; k < p; ++k) computational.push_back(StateVector::Unit(p, k));
  fam.bases.push_back(std::move(computational));

  if (p == 2) {
    // Eigenbases of sigma_x and sigma_y.
    const cplx i(0.0, 1.0);
    StateVector plus(2), minus(2), plus_i(2), minus_i(2);
    plus << norm, norm;
    minus << norm, -norm;
    plus_i << norm, i * norm;
    minus_i << norm, -i * norm;
    fam.bases.push_back({plus, minus});
    fam.bases.push_back({plus_i, minus_i});
    return fam;
  }

  // Basis m, vector k: components w^{m j^2 + k j} / sqrt(p).
  for (int m = 0; m < p; ++m) {
    std::vector<StateVector> basis;
    for (int k = 0; k < p; ++k) {
      StateVector v(p);
      for (long long j = 0; j < p; ++j) v(j) = norm * root_of_unity(p, m * j * j + k * j);
      fix_phase_gauge(v);
      basis.push_back(std::move(v));
    }
    fam.bases.push_back(std::move(basis));
  }
  return fam;
}

DiscretePOVM mub_povm(const MubFamily& family) {
  std::vector<StateVector> vectors;
  std::vector<std::string> labels;
  for (std::size_t l = 0; l < family.bases.size(); ++l) {
    for (std::size_t k = 0; k < family.bases[l].size(); ++k) {
      vectors.push_back(family.bases[l][k]);
      labels.push_back("b" + std::to_string(l) + "_" + std::to_string(k));
    }
  }
  return rank_one_povm(vectors, 1.0 / (family.p + 1.0), std::move(labels));
}

DiscretePOVM mub_povm(int p) { return mub_povm(mub_family(p)); }

DiscretePOVM basis_povm(int dim) {
  if (dim < 1) throw PreconditionError("basis_povm: dimension must be >= 1");
  std::vector<StateVector> vectors;
  std::vector<std::string> labels;
  for (int k = 0; k < dim; ++k) {
    vectors.push_back(StateVector::Unit(dim, k));
    labels.push_back("e" + std::to_string(k));
  }
  return rank_one_povm(vectors, 1.0, std::move(labels));
}

DiscretePOVM random_rank_one_povm(int dim, int n, std::uint64_t seed) {
  if (dim < 1) throw PreconditionError("random_rank_one_povm: dimension must be >= 1");
  if (n < dim) {
    throw PreconditionError("random_rank_one_povm: need n >= d (" + std::to_string(n) + " < " +
                            std::to_string(dim) + ")");
  }
  constexpr int kMaxAttempts = 16;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Rng rng(child_seed(seed, static_cast<std::uint64_t>(attempt)));
    std::vector<StateVector> v(n);
    Operator g = Operator::Zero(dim, dim);
    for (auto& x : v) {
      x = haar_random_state(dim, rng);
      g += projector(x);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian_part(g));
    const Eigen::VectorXd lambda = solver.eigenvalues();
    if (lambda(0) <= 1e-10 * lambda(dim - 1)) continue;
    const Operator g_inv_sqrt =
        solver.eigenvectors() * lambda.cwiseSqrt().cwiseInverse().asDiagonal() * solver.eigenvectors().adjoint();
    std::vector<Operator> elements;
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) {
      const StateVector w = g_inv_sqrt * v[i];
      elements.push_back(projector(w));
      labels.push_back("r" + std::to_string(i));
    }
    return {std::move(elements), std::move(labels)};
  }
  throw Error("random_rank_one_povm: frame operator stayed singular after " +
              std::to_string(kMaxAttempts) + " draws");
}

}  // namespace tightpovm
