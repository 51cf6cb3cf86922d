#pragma once

// Discrete POVMs: trace-measure decomposition, the POVM superoperator,
// informational completeness and tightness certification, canonical dual
// frames and the closed-form reconstruction paths.

#include <optional>
#include <string>
#include <vector>

#include "tightpovm/designs.hpp"
#include "tightpovm/linops.hpp"

namespace tightpovm {

class DiscretePOVM {
 public:
  // Labels default to "0", "1", ... when empty. Positivity and normalization
  // are not enforced here; see validate_povm.
  DiscretePOVM(std::vector<Operator> elements, std::vector<std::string> labels = {});

  int dim() const { return dim_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<Operator>& elements() const { return elements_; }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  int dim_ = 0;
  std::vector<Operator> elements_;
  std::vector<std::string> labels_;
};

struct PovmDiagnostics {
  std::vector<double> min_eigenvalues;
  double hermiticity_residual = 0.0;  // max over elements of max|F - F^dag|
  double sum_residual = 0.0;          // ||sum F - I||_F
  bool ok = false;
};

PovmDiagnostics validate_povm(const DiscretePOVM& f, double tol = 1e-10);

// Trace measure tau(x) = tr F(x) and density P(x) = F(x) / tau(x), over the
// outcomes with nonzero trace.
struct Povd {
  int dim = 0;
  std::vector<double> taus;
  std::vector<Operator> densities;
  std::vector<std::size_t> outcomes;  // original outcome index of each retained entry
  std::vector<std::size_t> dropped;   // zero-trace outcomes
  std::vector<std::string> warnings;
};

inline constexpr double kZeroTraceTol = 1e-14;

Povd povd_decompose(const DiscretePOVM& f);

// F = sum_x tau(x) |P(x))(P(x)|
SuperOp povm_superoperator(const DiscretePOVM& f);
SuperOp povm_superoperator(const Povd& povd);

struct IcCheck {
  bool is_ic = false;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
};

IcCheck ic_check(const DiscretePOVM& f, double tol = 1e-10);

// R(x) = F^{-1} |P(x)), aligned with Povd::outcomes.
struct ReconstructionOvd {
  int dim = 0;
  std::vector<double> taus;
  std::vector<Operator> operators;
  std::vector<std::size_t> outcomes;
  std::size_t total_outcomes = 0;
};

// Throws NotInformationallyComplete when ic_check fails.
ReconstructionOvd canonical_reconstruction(const DiscretePOVM& f, double tol = 1e-10);

// ||sum_x tau(x) |Q(x))(P(x)| - I||_F for Q aligned with povd.outcomes.
double dual_frame_residual(const Povd& povd, const std::vector<Operator>& q);

// sum_x p(x) R(x). `probabilities` is indexed by either the retained outcomes
// or all outcomes of the POVM; it is used as given, without renormalizing.
Operator reconstruct(const ReconstructionOvd& r, const std::vector<double>& probabilities);
Operator reconstruct(const DiscretePOVM& f, const std::vector<double>& probabilities);

// Born probabilities tr[F(x) rho] over all outcomes.
std::vector<double> born_probabilities(const DiscretePOVM& f, const Operator& rho);

// (sum_x tau tr P^2 - 1) / (d^2 - 1)
double frame_constant(const DiscretePOVM& f);

struct TightnessReport {
  double a = 0.0;
  double residual = 0.0;           // ||Pi0 F Pi0 - a Pi0||_F
  double rank_one_residual = 0.0;  // ||F - (I + trace map)/(d+1)||_F
  bool is_tight = false;
  bool is_rank_one_tight = false;
  bool is_ic = false;
  double lambda_min = 0.0;
  std::optional<double> trace_inverse;  // Tr(F^{-1}), IC only
  double trace_f = 0.0;
  bool rank_one = false;           // Tr(F) == d
  double frame_bound_lhs = 0.0;    // sum_{x,y} tau tau (P|P)^2
  double frame_bound_rhs = 0.0;    // 1 + (Tr F - 1)^2 / (d^2 - 1)
  double rank_one_bound = 0.0;     // 2d / (d+1)
  double trace_inverse_bound = 0.0;  // d (d (d+1) - 1)
};

TightnessReport tightness_check(const DiscretePOVM& f, double tol = 1e-9);

// (1/a) sum_x p(x) P(x) - (1-a)/(a d) I. Throws NotTight unless is_tight.
Operator tight_reconstruct(const DiscretePOVM& f, const std::vector<double>& probabilities,
                           double tol = 1e-9);

// The outcome distribution (X, tau/d) as a weighted design, when every P(x)
// is a rank-one projector within tol.
std::optional<WeightedDesign> outcome_design(const DiscretePOVM& f, double tol = 1e-9);

struct DesignEquivalence {
  bool rank_one = false;
  std::optional<DesignReport> welch;    // frame-potential certificate, t = 2
  std::optional<double> moment_deviation;
  bool welch_is_design = false;
  bool moment_is_design = false;
  bool certificates_agree = false;
};

DesignEquivalence design_equivalence(const DiscretePOVM& f, double tol = 1e-9);

}  // namespace tightpovm
