#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace gibbs::cli {

/// The JSON-schema subset the toolkit publishes: type, enum, properties,
/// required, additionalProperties (boolean), items, minItems, minimum,
/// maximum, exclusiveMinimum, anyOf and local $ref into #/$defs.
/// Returns one "path: message" line per violation.
std::vector<std::string> validate(const nlohmann::json& schema, const nlohmann::json& doc);

/// Fills absent object members from `default` recursively (an object default
/// is itself completed from its sub-schema).
nlohmann::json apply_defaults(const nlohmann::json& schema, nlohmann::json doc);

const nlohmann::json& config_schema();
const nlohmann::json& report_schema();

}  // namespace gibbs::cli
