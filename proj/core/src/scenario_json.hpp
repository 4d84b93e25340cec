#pragma once

#include <json.hpp>

#include "forage/world.hpp"

namespace forage::detail {

// Overlays a parsed scenario object onto `base`. Shared with the suite loader,
// which applies per-experiment overrides on top of a base scenario.
Scenario apply_scenario_json(const nlohmann::json& doc, const Scenario& base);

}  // namespace forage::detail
