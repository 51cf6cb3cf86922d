#include "cli.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tightpovm/clone.hpp"
#include "tightpovm/constructions.hpp"
#include "tightpovm/designs.hpp"
#include "tightpovm/errors.hpp"
#include "tightpovm/io.hpp"
#include "tightpovm/povm.hpp"
#include "tightpovm/tomo.hpp"

namespace tightpovm::cli {

namespace {

using io::json;

class BadArgument : public Error {
 public:
  using Error::Error;
};

struct Globals {
  std::uint64_t seed = 0;
  std::optional<double> tol;
  std::string out;
  std::string format = "json";
};

std::string fmt_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return {buf, res.ptr};
}

json meta(const std::string& command, const Globals& g, json config) {
  return {{"tool", "tightpovm"},
          {"version", TIGHTPOVM_VERSION},
          {"command", command},
          {"seed", g.seed},
          {"config", std::move(config)}};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

long long parse_int(const std::string& s, const std::string& what) {
  long long v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw BadArgument("invalid " + what + ": \"" + s + "\"");
  }
  return v;
}

// Builtins: sic:d, mub:p, basis:d, random:d:n:seed. Anything else is a file.
DiscretePOVM load_povm(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.size() >= 2) {
    const std::string& kind = parts[0];
    if (kind == "sic" && parts.size() == 2) return sic_povm(static_cast<int>(parse_int(parts[1], "dimension")));
    if (kind == "mub" && parts.size() == 2) return mub_povm(static_cast<int>(parse_int(parts[1], "prime")));
    if (kind == "basis" && parts.size() == 2) return basis_povm(static_cast<int>(parse_int(parts[1], "dimension")));
    if (kind == "random" && parts.size() == 4) {
      return random_rank_one_povm(static_cast<int>(parse_int(parts[1], "dimension")),
                                  static_cast<int>(parse_int(parts[2], "outcome count")),
                                  static_cast<std::uint64_t>(parse_int(parts[3], "seed")));
    }
  }
  return io::povm_from_json(io::read_json_file(spec));
}

StateEnsemble load_state(const std::string& spec, int dim) {
  if (spec == "pure:random") return HaarOrbit{projector(StateVector::Unit(dim, 0))};
  if (spec == "pure:fixed") return FixedState{projector(StateVector::Unit(dim, 0))};
  if (spec == "mixed:id") return FixedState{Operator::Identity(dim, dim) / static_cast<double>(dim)};
  Operator rho = io::state_from_json(io::read_json_file(spec));
  if (rho.rows() != dim) throw DimensionMismatch("state dimension does not match the POVM");
  return FixedState{std::move(rho)};
}

void emit(const json& j, const Globals& g, std::ostream& out) {
  if (g.out.empty()) {
    out << io::dump(j) << '\n';
  } else {
    io::write_json_file(g.out, j);
  }
}

void require_json(const Globals& g, const char* command) {
  if (g.format != "json") throw BadArgument(std::string(command) + " supports --format json only");
}

std::string tau_profile(const DiscretePOVM& f) {
  std::string s = "[";
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) s += ",";
    s += fmt_double(f.elements()[i].trace().real());
  }
  return s + "]";
}

int cmd_construct(const std::string& kind, int n_param, int n_outcomes, const Globals& g, std::ostream& out) {
  require_json(g, "construct");
  DiscretePOVM f = [&]() -> DiscretePOVM {
    if (kind == "sic") {
      FiducialSearchOptions opts;
      opts.seed = g.seed == 0 ? opts.seed : g.seed;
      return sic_povm(n_param, opts);
    }
    if (kind == "mub") return mub_povm(n_param);
    if (kind == "basis") return basis_povm(n_param);
    if (kind == "random") {
      if (n_outcomes <= 0) throw BadArgument("construct random needs --n");
      return random_rank_one_povm(n_param, n_outcomes, g.seed);
    }
    throw BadArgument("unknown construction \"" + kind + "\" (expected sic, mub, basis or random)");
  }();
  const auto ic = ic_check(f);
  json config = {{"kind", kind}, {"d", n_param}};
  if (kind == "random") config["n"] = n_outcomes;
  json doc = io::povm_to_json(f);
  doc["meta"] = meta("construct", g, std::move(config));
  if (g.out.empty()) {
    out << io::dump(doc) << '\n';
  } else {
    io::write_json_file(g.out, doc);
    out << "outcomes=" << f.size() << " tau=" << tau_profile(f) << " ic=" << (ic.is_ic ? "true" : "false")
        << '\n';
  }
  return kOk;
}

int cmd_verify(const std::string& spec, const Globals& g, std::ostream& out) {
  require_json(g, "verify");
  const DiscretePOVM f = load_povm(spec);
  const double tol = g.tol.value_or(1e-9);
  const auto diag = validate_povm(f);
  json doc;
  doc["meta"] = meta("verify", g, {{"povm", spec}, {"tol", tol}});
  doc["dim"] = f.dim();
  doc["outcomes"] = f.size();
  doc["validate"] = io::to_json(diag);
  doc["ic"] = io::to_json(ic_check(f));
  if (f.dim() >= 2) {
    doc["tightness"] = io::to_json(tightness_check(f, tol));
    doc["design_equivalence"] = io::to_json(design_equivalence(f, tol));
  }
  emit(doc, g, out);
  // A report was produced; only an invalid POVM is a domain failure here.
  return diag.ok ? kOk : kDomainFailure;
}

int cmd_search(int d, int n, int iters, int restarts, bool weights, const Globals& g, std::ostream& out) {
  require_json(g, "search");
  SearchOptions opts;
  opts.max_iters = iters;
  opts.restarts = restarts;
  opts.optimize_weights = weights;
  if (g.tol) opts.certify_tol = *g.tol;
  const auto res = search_2design(d, n, g.seed, opts);
  json config = {{"d", d},
                 {"n", n},
                 {"iters", iters},
                 {"restarts", restarts},
                 {"optimize_weights", weights},
                 {"certify_tol", opts.certify_tol}};
  json summary;
  summary["meta"] = meta("search", g, config);
  summary["certified"] = res.certified;
  summary["best_restart"] = res.best_restart;
  summary["report"] = io::to_json(res.report);
  if (!g.out.empty()) {
    json doc = io::design_to_json(res.design);
    doc["meta"] = meta("search", g, config);
    doc["certified"] = res.certified;
    doc["gap"] = res.report.gap;
    io::write_json_file(g.out, doc);
  } else {
    summary["design"] = io::design_to_json(res.design);
  }
  out << io::dump(summary) << '\n';
  return res.certified ? kOk : kDomainFailure;
}

int cmd_tomo(const std::string& povm_spec, const std::string& state_spec, long long n, long long trials,
             const std::string& estimator, const Globals& g, std::ostream& out) {
  const DiscretePOVM f = load_povm(povm_spec);
  TomographyConfig cfg;
  cfg.samples = n;
  cfg.trials = trials;
  cfg.seed = g.seed;
  if (estimator == "frequency") {
    cfg.estimator = Estimator::frequency;
  } else if (estimator == "mub") {
    cfg.estimator = Estimator::mub_constrained;
  } else {
    throw BadArgument("unknown estimator \"" + estimator + "\" (expected frequency or mub)");
  }
  cfg.ensemble = load_state(state_spec, f.dim());
  cfg.keep_per_trial = g.format == "csv";
  const auto stats = run_tomography(f, cfg);

  json config = {{"povm", povm_spec}, {"state", state_spec}, {"N", n}, {"trials", trials}, {"estimator", estimator}};
  json summary = io::to_json(stats);
  summary["meta"] = meta("tomo", g, config);
  out << io::dump(summary) << '\n';

  if (!g.out.empty()) {
    if (g.format == "csv") {
      std::ofstream csv(g.out);
      if (!csv) throw ParseError("cannot write " + g.out);
      csv << "# tool=tightpovm version=" << TIGHTPOVM_VERSION << '\n';
      csv << "# config=" << config.dump() << '\n';
      csv << "# seed=" << g.seed << '\n';
      csv << "trial,sq_error\n";
      for (std::size_t k = 0; k < stats.per_trial.size(); ++k) {
        csv << k << ',' << fmt_double(stats.per_trial[k]) << '\n';
      }
      if (!csv) throw ParseError("write failed for " + g.out);
    } else {
      io::write_json_file(g.out, summary);
    }
  }
  return kOk;
}

int cmd_clone(const std::string& povm_spec, long long samples, int refine, const Globals& g, std::ostream& out) {
  require_json(g, "clone");
  const DiscretePOVM f = load_povm(povm_spec);
  const auto strategy = povd_strategy(f);
  const auto report = fidelity_report(strategy, samples, refine, g.seed);
  json doc = io::to_json(report);
  doc["bound"] = 2.0 / (f.dim() + 1.0);
  doc["meta"] = meta("clone", g, {{"povm", povm_spec}, {"samples", samples}, {"refine_iters", refine}});
  emit(doc, g, out);
  return kOk;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return kIoError;
  if (dynamic_cast<const BadArgument*>(&e) || dynamic_cast<const PreconditionError*>(&e) ||
      dynamic_cast<const DimensionMismatch*>(&e) || dynamic_cast<const SizeLimitExceeded*>(&e)) {
    return kBadArguments;
  }
  return kDomainFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Construct, verify and exercise tight informationally complete POVMs", "tightpovm"};
  app.set_version_flag("--version", std::string(TIGHTPOVM_VERSION));
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Master seed");
  app.add_option("--tol", g.tol, "Certification tolerance override");
  app.add_option("--out", g.out, "Output file");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  std::string kind;
  int param = 0;
  int n_outcomes = 0;
  auto* construct = app.add_subcommand("construct", "Build a POVM and write it as JSON");
  construct->add_option("kind", kind, "sic | mub | basis | random")->required();
  construct->add_option("d", param, "Dimension (prime p for mub)")->required();
  construct->add_option("--n", n_outcomes, "Outcome count for random");

  std::string povm_spec;
  auto* verify = app.add_subcommand("verify", "Print validation, IC, tightness and design reports");
  verify->add_option("povm", povm_spec, "POVM file or builtin (sic:2, mub:3, basis:2, random:d:n:seed)")
      ->required();

  int search_d = 0;
  int search_n = 0;
  int iters = 20000;
  int restarts = 8;
  bool weights = false;
  auto* search = app.add_subcommand("search", "Numerical 2-design search");
  search->add_option("d", search_d, "Dimension")->required();
  search->add_option("n", search_n, "Number of points")->required();
  search->add_option("--iters", iters, "Iterations per restart");
  search->add_option("--restarts", restarts, "Random restarts");
  search->add_flag("--weights", weights, "Also optimize the weights");

  std::string state_spec = "pure:random";
  long long n_samples = 100;
  long long trials = 1000;
  std::string estimator = "frequency";
  auto* tomo = app.add_subcommand("tomo", "Monte Carlo linear tomography");
  tomo->add_option("--povm", povm_spec, "POVM file or builtin")->required();
  tomo->add_option("--state", state_spec, "pure:random | pure:fixed | mixed:id | state file");
  tomo->add_option("--N", n_samples, "Measurements per trial");
  tomo->add_option("--trials", trials, "Number of trials");
  tomo->add_option("--estimator", estimator, "frequency | mub");

  long long clone_samples = 512;
  int refine = 50;
  auto* clone = app.add_subcommand("clone", "Measurement-based cloning fidelity report");
  clone->add_option("--povm", povm_spec, "POVM file or builtin")->required();
  clone->add_option("--samples", clone_samples, "Haar samples");
  clone->add_option("--refine", refine, "Worst-case refinement steps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadArguments;
  }

  try {
    if (construct->parsed()) return cmd_construct(kind, param, n_outcomes, g, out);
    if (verify->parsed()) return cmd_verify(povm_spec, g, out);
    if (search->parsed()) return cmd_search(search_d, search_n, iters, restarts, weights, g, out);
    if (tomo->parsed()) return cmd_tomo(povm_spec, state_spec, n_samples, trials, estimator, g, out);
    if (clone->parsed()) return cmd_clone(povm_spec, clone_samples, refine, g, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kBadArguments;
}

}  // namespace tightpovm::cli
