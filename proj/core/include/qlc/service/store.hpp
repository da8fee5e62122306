#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qlc/assess/session.hpp"
#include "qlc/service/event_log.hpp"
#include "qlc/stats/answer_log.hpp"

namespace qlc::service {

class StoreError : public Error {
public:
    using Error::Error;
};

// Session state rebuilt purely from events. Not synchronized; the owner
// serializes access.
class Store {
public:
    explicit Store(std::vector<assess::ExerciseSpec> exercises);

    const std::vector<assess::ExerciseSpec>& exercises() const { return exercises_; }
    const assess::ExerciseSpec* exercise(std::string_view id) const;

    const assess::SessionState* session(std::string_view session_id) const;
    // Session that owns a questionnaire, by questionnaire id.
    const assess::SessionState* session_for_questionnaire(std::string_view questionnaire_id) const;
    const std::map<std::string, assess::SessionState, std::less<>>& sessions() const { return sessions_; }
    const std::map<std::string, double>& course_points() const { return course_points_; }

    // Throws StoreError if the event does not fit the current state.
    void apply(const EventRecord& event);

    // One row per graded question of the exercise's answered sessions.
    stats::AnswerLog answer_log(std::string_view exercise_id) const;

    bool operator==(const Store& other) const;

private:
    std::vector<assess::ExerciseSpec> exercises_;
    std::map<std::string, assess::SessionState, std::less<>> sessions_;
    std::map<std::string, std::string, std::less<>> questionnaire_owner_;
    std::map<std::string, double> course_points_;
};

nlohmann::json submission_payload(const std::string& exercise_id, const assess::SubmissionRecord& record);
nlohmann::json opened_payload(const std::string& session_id, const std::string& submission_id,
                              const gen::Questionnaire& questionnaire);
nlohmann::json graded_payload(const std::string& session_id, const assess::Answers& answers,
                              const assess::GradeReport& report, const gen::Questionnaire& questionnaire);
nlohmann::json course_points_payload(const std::map<std::string, double>& points);

} // namespace qlc::service
