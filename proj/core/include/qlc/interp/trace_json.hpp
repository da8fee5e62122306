#pragma once

#include <nlohmann/json.hpp>

#include "qlc/interp/interpreter.hpp"

namespace qlc::interp {

// {"type": "int"|"float"|"str"|"bool"|"none"|"list", "repr": "...", "value": ...}
// Non-finite floats carry a null "value"; "repr" is always exact.
nlohmann::json value_to_json(const Value& value);

// {"stdout": [...], "events": [...], "result": {...}, "stepsUsed": n}
nlohmann::json trace_to_json(const ExecTrace& trace);

nlohmann::json fault_to_json(const RuntimeFault& fault);

} // namespace qlc::interp
