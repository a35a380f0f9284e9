// scenario_json.hpp — JSON (de)serialization of scenario configs, shared by the
// config loader and the report writer.
#pragma once

#include "json.hpp"

#include "ecdm/scenario.hpp"

namespace ecdm::detail {

nlohmann::json scenario_to_json(const SimScenario& scenario);

// `context` prefixes error messages (e.g. the config file path).
SimScenario scenario_from_json(const nlohmann::json& j, const std::string& context);

}  // namespace ecdm::detail
