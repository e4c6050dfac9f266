#pragma once

#include <filesystem>

#include <json.hpp>

#include "dss/experiments.hpp"
#include "dss/network_model.hpp"

namespace dss {

/// Top-level document: {"radio": {...}, "sim": {...}, "sweep": {...}}, all
/// sections optional. Keys inside each section match the struct field names;
/// unknown keys and wrong types are errors.
struct ExperimentConfig {
  RadioConfig radio;
  SimConfig sim;
  SweepSpec sweep;  // carries copies of radio and sim
};

/// Throws ConfigValidationError naming every bad key and violated constraint.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);

nlohmann::json to_json(const RadioConfig& radio);
nlohmann::json to_json(const SimConfig& sim);
nlohmann::json to_json(const ExperimentConfig& cfg);

}  // namespace dss
