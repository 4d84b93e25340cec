#pragma once

#include <filesystem>
#include <string>

#include "forage/world.hpp"

namespace forage {

/// Reads a scenario JSON document. Keys absent from the document keep the
/// value they have in `base`; unknown keys, wrong types and constraint
/// violations all throw ValidationError naming the offending fields.
Scenario parse_scenario(const std::string& json_text, const Scenario& base = Scenario{});

/// Loads a scenario file. The scenario name defaults to the file stem unless
/// the document sets "name". Throws std::runtime_error (not ValidationError)
/// when the file cannot be read.
Scenario load_scenario(const std::filesystem::path& path);

/// Full JSON document for a scenario; parse_scenario(scenario_to_json(s)) == s.
std::string scenario_to_json(const Scenario& scenario);

}  // namespace forage
