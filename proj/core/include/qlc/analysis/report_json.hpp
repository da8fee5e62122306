#pragma once

#include <nlohmann/json.hpp>

#include "qlc/analysis/except_flow.hpp"
#include "qlc/analysis/identifiers.hpp"
#include "qlc/analysis/purposes.hpp"

namespace qlc::analysis {

nlohmann::json identifiers_to_json(const IdentifierTable& table);
nlohmann::json except_flows_to_json(const std::vector<ExceptFlow>& flows);
nlohmann::json purposes_to_json(const std::vector<PurposeFinding>& findings);

// Plain-text renderings used by `qlc analyze` without --json.
std::string identifiers_to_text(const IdentifierTable& table);
std::string except_flows_to_text(const std::vector<ExceptFlow>& flows);
std::string purposes_to_text(const std::vector<PurposeFinding>& findings);

} // namespace qlc::analysis
