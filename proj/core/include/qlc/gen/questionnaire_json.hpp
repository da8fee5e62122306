#pragma once

#include <nlohmann/json.hpp>

#include "qlc/gen/questionnaire.hpp"

namespace qlc::gen {

// Full form with correctness, categories and explanations.
nlohmann::json to_instructor_json(const Questionnaire& q);
// Redacted form: options carry only {id, label}.
nlohmann::json to_student_json(const Questionnaire& q);

// Reads the instructor form. Throws lang::SchemaError on malformed input.
Questionnaire questionnaire_from_json(const nlohmann::json& json);

} // namespace qlc::gen
