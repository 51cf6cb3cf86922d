#pragma once

// JSON serialization for POVMs, designs, states and reports. Complex numbers
// are written as [re, im]; doubles use shortest round-trip form.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "tightpovm/clone.hpp"
#include "tightpovm/constructions.hpp"
#include "tightpovm/designs.hpp"
#include "tightpovm/povm.hpp"
#include "tightpovm/tomo.hpp"

namespace tightpovm::io {

using json = nlohmann::ordered_json;

json operator_to_json(const Operator& m);
Operator operator_from_json(const json& j, int dim);

json povm_to_json(const DiscretePOVM& f);
// Structural problems (shape, missing keys) throw ParseError.
DiscretePOVM povm_from_json(const json& j);

json design_to_json(const WeightedDesign& d);
// Points are normalized and weights renormalized by WeightedDesign.
WeightedDesign design_from_json(const json& j);

// {"dim": d, "vector": [...]} or {"dim": d, "matrix": [[...]]}; returns the
// density matrix. Vectors are normalized.
Operator state_from_json(const json& j);

// Parse errors carry the line and column reported by the parser.
json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);
std::string dump(const json& j);

json to_json(const PovmDiagnostics& r);
json to_json(const IcCheck& r);
json to_json(const TightnessReport& r);
json to_json(const DesignReport& r);
json to_json(const DesignEquivalence& r);
json to_json(const TomographyStats& r);
json to_json(const SampleSummary& r);
json to_json(const FidelityReport& r);

}  // namespace tightpovm::io
