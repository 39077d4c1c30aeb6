#pragma once

// internal: shared between params.cpp and experiment.cpp only
#include <nlohmann/json.hpp>

#include "ersl/params.hpp"

namespace ersl {
ModelParams parse_params_object(const nlohmann::json& j, const std::string& ptr);
}
