#pragma once

#include <filesystem>

#include <json.hpp>

#include "openqfi/sweep.hpp"

namespace openqfi {

// JSON mirror of SweepConfig:
//   {"scenario": "dephasing", "swept_parameter": "r",
//    "range": {"lo": 0, "hi": 20, "step": 0.1},
//    "fixed_params": {"g": 2.5, "gamma": 0.5, ...},
//    "solver": "analytic", "output_path": "fig1.csv",
//    "audit_fraction": 0.05, "threads": 0}
// Every key is optional. Unknown keys raise InvalidConfig naming the key.
// For non-dephasing configs, omega and polarization default to B and B/2.
SweepConfig sweep_config_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const SweepConfig& config);

// Throws Io when the file cannot be read, InvalidConfig on bad content.
SweepConfig load_sweep_config(const std::filesystem::path& path);

std::optional<Scenario> parse_scenario(std::string_view text);

}  // namespace openqfi
