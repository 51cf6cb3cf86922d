#include "tightpovm/io.hpp"

#include <fstream>
#include <sstream>

#include "tightpovm/errors.hpp"

namespace tightpovm::io {

namespace {

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError("expected a complex number [re, im], got " + j.dump());
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

int read_dim(const json& j) {
  const json& d = require(j, "dim");
  if (!d.is_number_integer() || d.get<int>() < 1) throw ParseError("\"dim\" must be a positive integer");
  return d.get<int>();
}

json vector_to_json(const StateVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

StateVector vector_from_json(const json& j, int dim) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    throw ParseError("expected a vector of " + std::to_string(dim) + " complex entries");
  }
  StateVector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = complex_from_json(j[static_cast<std::size_t>(i)]);
  return v;
}

json optional_number(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

}  // namespace

json operator_to_json(const Operator& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Operator operator_from_json(const json& j, int dim) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    throw ParseError("expected a " + std::to_string(dim) + "x" + std::to_string(dim) + " matrix");
  }
  Operator m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      throw ParseError("matrix row " + std::to_string(r) + " does not have " + std::to_string(dim) + " entries");
    }
    for (int c = 0; c < dim; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

json povm_to_json(const DiscretePOVM& f) {
  json elements = json::array();
  for (const auto& e : f.elements()) elements.push_back(operator_to_json(e));
  return {{"dim", f.dim()}, {"labels", f.labels()}, {"elements", std::move(elements)}};
}

DiscretePOVM povm_from_json(const json& j) {
  const int dim = read_dim(j);
  const json& elems = require(j, "elements");
  if (!elems.is_array() || elems.empty()) throw ParseError("\"elements\" must be a non-empty array");
  std::vector<Operator> elements;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    try {
      elements.push_back(operator_from_json(elems[i], dim));
    } catch (const ParseError& e) {
      throw ParseError("element " + std::to_string(i) + ": " + e.what());
    }
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    const json& l = j.at("labels");
    if (!l.is_array() || l.size() != elements.size()) {
      throw ParseError("\"labels\" must have one entry per element");
    }
    for (const auto& x : l) labels.push_back(x.is_string() ? x.get<std::string>() : x.dump());
  }
  return {std::move(elements), std::move(labels)};
}

json design_to_json(const WeightedDesign& d) {
  json points = json::array();
  for (const auto& p : d.points()) points.push_back(vector_to_json(p));
  return {{"dim", d.dim()}, {"points", std::move(points)}, {"weights", d.weights()}};
}

WeightedDesign design_from_json(const json& j) {
  const int dim = read_dim(j);
  const json& pts = require(j, "points");
  if (!pts.is_array() || pts.empty()) throw ParseError("\"points\" must be a non-empty array");
  std::vector<StateVector> points;
  for (const auto& p : pts) {
    StateVector v = vector_from_json(p, dim);
    if (v.norm() == 0.0) throw ParseError("design point has zero norm");
    points.push_back(std::move(v));
  }
  std::vector<double> weights(points.size(), 1.0);
  if (j.contains("weights")) {
    const json& w = j.at("weights");
    if (!w.is_array() || w.size() != points.size()) throw ParseError("\"weights\" must have one entry per point");
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (!w[i].is_number() || !(w[i].get<double>() > 0.0)) throw ParseError("weights must be positive numbers");
      weights[i] = w[i].get<double>();
    }
  }
  return {std::move(points), std::move(weights)};
}

Operator state_from_json(const json& j) {
  const int dim = read_dim(j);
  if (j.contains("vector")) {
    StateVector v = vector_from_json(j.at("vector"), dim);
    if (v.norm() == 0.0) throw ParseError("state vector has zero norm");
    v.normalize();
    return projector(v);
  }
  if (j.contains("matrix")) return operator_from_json(j.at("matrix"), dim);
  throw ParseError("state needs a \"vector\" or a \"matrix\" entry");
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    // nlohmann reports "at line L, column C" in the message.
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path.string());
  out << dump(j) << '\n';
  if (!out) throw ParseError("write failed for " + path.string());
}

std::string dump(const json& j) { return j.dump(2); }

json to_json(const PovmDiagnostics& r) {
  return {{"ok", r.ok},
          {"min_eigenvalues", r.min_eigenvalues},
          {"hermiticity_residual", r.hermiticity_residual},
          {"sum_residual", r.sum_residual}};
}

json to_json(const IcCheck& r) {
  return {{"is_ic", r.is_ic}, {"lambda_min", r.lambda_min}, {"lambda_max", r.lambda_max}};
}

json to_json(const TightnessReport& r) {
  return {{"a", r.a},
          {"residual", r.residual},
          {"rank_one_residual", r.rank_one_residual},
          {"is_tight", r.is_tight},
          {"is_rank_one_tight", r.is_rank_one_tight},
          {"is_ic", r.is_ic},
          {"lambda_min", r.lambda_min},
          {"trace_inverse", optional_number(r.trace_inverse)},
          {"trace_inverse_bound", r.trace_inverse_bound},
          {"trace_f", r.trace_f},
          {"rank_one", r.rank_one},
          {"frame_bound_lhs", r.frame_bound_lhs},
          {"frame_bound_rhs", r.frame_bound_rhs},
          {"rank_one_bound", r.rank_one_bound}};
}

json to_json(const DesignReport& r) {
  return {{"t", r.t},
          {"potential", r.potential},
          {"bound", r.bound},
          {"gap", r.gap},
          {"is_design", r.is_design},
          {"near_design", r.near_design},
          {"size_bound", r.size_bound},
          {"equiangular", optional_number(r.equiangular)}};
}

json to_json(const DesignEquivalence& r) {
  return {{"rank_one", r.rank_one},
          {"welch", r.welch ? to_json(*r.welch) : json(nullptr)},
          {"moment_deviation", optional_number(r.moment_deviation)},
          {"welch_is_design", r.welch_is_design},
          {"moment_is_design", r.moment_is_design},
          {"certificates_agree", r.certificates_agree}};
}

json to_json(const TomographyStats& r) {
  return {{"mean", r.mean_sq_error},
          {"stderr", r.std_error},
          {"predicted", r.predicted},
          {"trials", r.trials},
          {"samples", r.samples}};
}

json to_json(const SampleSummary& r) {
  return {{"count", r.count}, {"mean", r.mean},         {"stderr", r.std_error},
          {"variance", r.variance}, {"min", r.min}, {"max", r.max}};
}

json to_json(const FidelityReport& r) {
  return {{"f_av", r.f_av},
          {"f_wc_upper_bound", r.f_wc_estimate},
          {"variance", r.variance},
          {"variance_method", r.variance_method},
          {"samples", to_json(r.samples)}};
}

}  // namespace tightpovm::io
