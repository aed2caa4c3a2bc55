#pragma once

#include <string>
#include <string_view>

#include <json.hpp>
#include "ecm/scenario.hpp"

namespace ecm {

constexpr int kFormatVersion = 1;

// Instance documents. Unknown fields are rejected; errors carry the JSON path
// or the byte offset of a syntax error.
ProblemInstance parse_instance(std::string_view text);
ProblemInstance instance_from_json(const nlohmann::json& j);
nlohmann::json instance_to_json(const ProblemInstance& inst);
std::string serialize_instance(const ProblemInstance& inst);  // pretty, trailing newline

ProblemInstance load_instance(const std::string& path);
void save_instance(const std::string& path, const ProblemInstance& inst);

nlohmann::json weight_to_json(const Weight& w);
nlohmann::json ballot_to_json(const Ballot& b);

}  // namespace ecm
