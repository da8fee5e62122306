#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qlc/assess/exercise.hpp"
#include "qlc/assess/functional.hpp"
#include "qlc/assess/grading.hpp"
#include "qlc/gen/questionnaire.hpp"

namespace qlc::assess {

struct SubmissionRecord {
    std::string submission_id;
    std::string session_id;
    std::string source;
    std::string source_hash;
    std::vector<TestResult> test_results;
    int program_points = 0;
    std::string timestamp;
    // Set when the source did not parse.
    std::optional<std::string> parse_error;
    bool operator==(const SubmissionRecord&) const = default;
};

struct QuestionnaireState {
    gen::Questionnaire questionnaire;
    std::string opened_at_submission_id;
    bool answered = false;
    Answers answers;
    std::optional<GradeReport> report;
    int qlc_points = 0;
    bool operator==(const QuestionnaireState&) const = default;
};

struct SessionState {
    std::string session_id;
    std::string exercise_id;
    std::vector<SubmissionRecord> submissions;
    std::optional<QuestionnaireState> questionnaire;

    int best_program_points() const;
    int qlc_points() const;
    int total_points() const;
    int submissions_remaining(const ExerciseSpec& spec) const;
    bool operator==(const SessionState&) const = default;
};

// Runs the tests for one submission. Pure: does not touch any session.
SubmissionRecord evaluate_submission(const ExerciseSpec& spec, const std::string& session_id,
                                     const std::string& submission_id, const std::string& source,
                                     const std::string& timestamp);

// Throws AssessmentError{LimitExceeded} when the session is full.
void check_can_submit(const SessionState& session, const ExerciseSpec& spec);
void apply_submission(SessionState& session, const ExerciseSpec& spec, SubmissionRecord record);

// evaluate + apply.
const SubmissionRecord& submit(SessionState& session, const ExerciseSpec& spec, const std::string& source,
                               const std::string& submission_id, const std::string& timestamp);

// The submission a questionnaire would be generated from: the latest one
// whose source parses. Throws NotEligible or AlreadyOpened.
const SubmissionRecord& questionnaire_source(const SessionState& session);

// Generates from questionnaire_source without changing the session.
gen::Questionnaire build_questionnaire(const SessionState& session, const ExerciseSpec& spec, std::uint64_t seed);
void apply_opened(SessionState& session, gen::Questionnaire questionnaire, const std::string& submission_id);

// build + apply.
const gen::Questionnaire& open_questionnaire(SessionState& session, const ExerciseSpec& spec, std::uint64_t seed);

// Grades without changing the session. Throws NotOpened, AlreadyAnswered,
// or an answer-validation error.
GradeReport prepare_grade(const SessionState& session, const ExerciseSpec& spec, const Answers& answers);
void apply_grade(SessionState& session, const Answers& answers, GradeReport report);

// prepare + apply; the session is unchanged if this throws.
const GradeReport& answer_questionnaire(SessionState& session, const ExerciseSpec& spec, const Answers& answers);

nlohmann::json submission_to_json(const SubmissionRecord& record);
SubmissionRecord submission_from_json(const nlohmann::json& json);
nlohmann::json test_results_to_json(const std::vector<TestResult>& results);

} // namespace qlc::assess
