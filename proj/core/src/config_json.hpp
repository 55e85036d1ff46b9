#pragma once

#include "textcat/config.hpp"

#include <json.hpp>

namespace textcat::detail {

nlohmann::ordered_json config_to_json_value(const PipelineConfig& config);
PipelineConfig config_from_json_value(const nlohmann::ordered_json& value);

}  // namespace textcat::detail
