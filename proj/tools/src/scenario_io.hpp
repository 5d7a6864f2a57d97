#pragma once

#include <stdexcept>
#include <string>

#include "hcbf/sim.hpp"
#include "json.hpp"

namespace hcbf::cli {

/// Scenario-file problem: unknown key, wrong type, or an invalid value. The
/// message names the offending field path (e.g. "limits.u_max").
class ScenarioError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

FilterMode parse_mode(const std::string& name);
std::string mode_name(FilterMode mode);

ObstacleShape parse_shape(const nlohmann::json& j, const std::string& path);
nlohmann::ordered_json serialize_shape(const ObstacleShape& shape);

Scenario parse_scenario(const nlohmann::json& j);
nlohmann::ordered_json serialize_scenario(const Scenario& scenario);

/// Reads and parses a scenario file; schema errors carry the field path.
Scenario load_scenario(const std::string& path);

/// Reads a bare shape document ({"type": ..., ...}) for fit-support.
ObstacleShape load_shape(const std::string& path);

}  // namespace hcbf::cli
