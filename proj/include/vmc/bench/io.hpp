#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "vmc/model/instance.hpp"

namespace vmc::bench {

using nlohmann::json;

json instance_to_json(const model::Instance& inst);
// Throws InvalidModel on missing fields or shape errors.
model::Instance instance_from_json(const json& j);

json plan_to_json(const model::Plan& plan, std::optional<double> objective = std::nullopt);
model::Plan plan_from_json(const json& j);

// File helpers. Reading throws InvalidModel on I/O or parse failure.
json read_json(const std::string& path);
void write_json(const std::string& path, const json& j);

}  // namespace vmc::bench
