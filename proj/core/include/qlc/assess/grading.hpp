#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qlc/common/error.hpp"
#include "qlc/gen/questionnaire.hpp"

namespace qlc::assess {

enum class ErrorCategory {
    MissedVariable,
    SelectedBuiltin,
    SelectedReserved,
    SelectedUnused,
    ChoseTryLine,
    ChoseOutsideBefore,
    WrongPurposeLabel,
};

std::string_view to_string(ErrorCategory category);
std::optional<ErrorCategory> error_category_from_string(std::string_view text);

// Lifecycle and answer-validation failures.
class AssessmentError : public Error {
public:
    enum class Code {
        LimitExceeded,
        NotEligible,
        AlreadyOpened,
        NotOpened,
        AlreadyAnswered,
        MissingAnswer,
        UnknownOption,
        UnknownQuestion,
        InvalidSelection,
    };

    AssessmentError(Code code, const std::string& message) : Error(message), code_(code) {}
    Code code() const { return code_; }

private:
    Code code_;
};

std::string_view to_string(AssessmentError::Code code);

// Question id → selected option ids.
using Answers = std::map<std::string, std::vector<std::string>>;

struct QuestionGrade {
    std::string question_id;
    gen::QlcType type = gen::QlcType::VariableNames;
    bool correct = false;
    std::vector<std::string> selected_option_ids;
    std::vector<std::string> correct_option_ids;
    std::set<ErrorCategory> error_categories;
    // Line-purpose questions: the purpose of the asked line.
    std::optional<analysis::Purpose> variant;
    bool operator==(const QuestionGrade&) const = default;
};

struct GradeReport {
    std::string questionnaire_id;
    std::vector<QuestionGrade> per_question;
    int qlc_points = 0;
    // Option id → explanation, for every option of every question.
    std::map<std::string, std::string> explanations;
    bool operator==(const GradeReport&) const = default;
};

// Validates and grades. Every question needs an answer; multi-select
// questions need at least one distinct option, the others exactly one.
// Throws AssessmentError (MissingAnswer, UnknownQuestion, UnknownOption,
// InvalidSelection).
GradeReport grade_answers(const gen::Questionnaire& questionnaire, const Answers& answers, int qlc_points_max);

Answers answers_from_json(const nlohmann::json& json);
nlohmann::json answers_to_json(const Answers& answers);

// Includes per-question options with labels, correctness and explanations.
nlohmann::json grade_report_to_json(const GradeReport& report, const gen::Questionnaire& questionnaire);
GradeReport grade_report_from_json(const nlohmann::json& json);

} // namespace qlc::assess
