#pragma once

#include <json.hpp>

#include <string>

#include "kfp/assumption.hpp"
#include "kfp/discretization.hpp"
#include "kfp/estimates.hpp"
#include "kfp/potential.hpp"

namespace kfp {

// Report serialization. Field order is fixed (ordered_json) so identical runs
// produce byte-identical output apart from runtime_ms.
nlohmann::ordered_json to_json(const Discretization& disc);
nlohmann::ordered_json to_json(const AssumptionReport& rep);
nlohmann::ordered_json to_json(const EstimateReport& rep);
nlohmann::ordered_json to_json(const CompactnessReport& rep);
nlohmann::ordered_json to_json(const LocalizationTrace& trace);
nlohmann::ordered_json to_json(const PotentialConstants& pc);
nlohmann::ordered_json to_json(const InfInequalityReport& rep);

// Pretty-printed JSON to the path, or to stdout when the path is empty.
void emit_report(const nlohmann::ordered_json& j, const std::string& out_path);

}  // namespace kfp
