#include "qlc/service/store.hpp"

#include <algorithm>

#include "qlc/gen/questionnaire_json.hpp"

namespace qlc::service {

using nlohmann::json;

Store::Store(std::vector<assess::ExerciseSpec> exercises) : exercises_(std::move(exercises)) {}

const assess::ExerciseSpec* Store::exercise(std::string_view id) const
{
    auto it = std::find_if(exercises_.begin(), exercises_.end(),
                           [&](const assess::ExerciseSpec& e) { return e.id == id; });
    return it == exercises_.end() ? nullptr : &*it;
}

const assess::SessionState* Store::session(std::string_view session_id) const
{
    auto it = sessions_.find(session_id);
    return it == sessions_.end() ? nullptr : &it->second;
}

const assess::SessionState* Store::session_for_questionnaire(std::string_view questionnaire_id) const
{
    auto it = questionnaire_owner_.find(questionnaire_id);
    return it == questionnaire_owner_.end() ? nullptr : session(it->second);
}

void Store::apply(const EventRecord& event)
{
    const json& p = event.payload;
    try {
        switch (event.kind) {
        case EventKind::SubmissionAdded: {
            std::string exercise_id = p.at("exerciseId").get<std::string>();
            const assess::ExerciseSpec* spec = exercise(exercise_id);
            if (spec == nullptr) {
                throw StoreError("event " + std::to_string(event.seq) + " names unknown exercise " + exercise_id);
            }
            assess::SubmissionRecord record = assess::submission_from_json(p.at("record"));
            auto [it, inserted] = sessions_.try_emplace(record.session_id);
            assess::SessionState& s = it->second;
            if (inserted) {
                s.session_id = record.session_id;
                s.exercise_id = exercise_id;
            } else if (s.exercise_id != exercise_id) {
                throw StoreError("session " + s.session_id + " belongs to exercise " + s.exercise_id);
            }
            assess::apply_submission(s, *spec, std::move(record));
            break;
        }
        case EventKind::QuestionnaireOpened: {
            std::string sid = p.at("sessionId").get<std::string>();
            auto it = sessions_.find(sid);
            if (it == sessions_.end()) {
                throw StoreError("questionnaire opened for unknown session " + sid);
            }
            gen::Questionnaire q = gen::questionnaire_from_json(p.at("questionnaire"));
            std::string qid = q.id;
            assess::apply_opened(it->second, std::move(q), p.at("submissionId").get<std::string>());
            questionnaire_owner_[qid] = sid;
            break;
        }
        case EventKind::AnswersGraded: {
            std::string sid = p.at("sessionId").get<std::string>();
            auto it = sessions_.find(sid);
            if (it == sessions_.end()) {
                throw StoreError("answers graded for unknown session " + sid);
            }
            assess::Answers answers = assess::answers_from_json(p.at("answers"));
            assess::GradeReport report = assess::grade_report_from_json(p.at("report"));
            assess::apply_grade(it->second, answers, std::move(report));
            break;
        }
        case EventKind::CoursePointsIngested:
            for (const auto& [sid, points] : p.at("points").items()) {
                course_points_[sid] = points.get<double>();
            }
            break;
        }
    } catch (const json::exception& e) {
        throw StoreError("event " + std::to_string(event.seq) + " has a malformed payload: " + e.what());
    } catch (const assess::AssessmentError& e) {
        throw StoreError("event " + std::to_string(event.seq) + " does not apply: " + e.what());
    }
}

stats::AnswerLog Store::answer_log(std::string_view exercise_id) const
{
    stats::AnswerLog log;
    for (const auto& [sid, s] : sessions_) {
        if (s.exercise_id != exercise_id || !s.questionnaire || !s.questionnaire->report) {
            continue;
        }
        std::optional<double> points;
        if (auto it = course_points_.find(sid); it != course_points_.end()) {
            points = it->second;
        }
        for (const assess::QuestionGrade& g : s.questionnaire->report->per_question) {
            stats::AnswerRow row;
            row.session_id = sid;
            row.type = g.type;
            row.correct = g.correct;
            for (assess::ErrorCategory c : g.error_categories) {
                row.error_categories.emplace_back(assess::to_string(c));
            }
            row.course_points = points;
            if (g.variant) {
                row.variant = std::string(analysis::to_string(*g.variant));
            }
            log.rows.push_back(std::move(row));
        }
    }
    return log;
}

bool Store::operator==(const Store& other) const
{
    return sessions_ == other.sessions_ && questionnaire_owner_ == other.questionnaire_owner_ &&
           course_points_ == other.course_points_;
}

json submission_payload(const std::string& exercise_id, const assess::SubmissionRecord& record)
{
    return json{{"exerciseId", exercise_id}, {"record", assess::submission_to_json(record)}};
}

json opened_payload(const std::string& session_id, const std::string& submission_id,
                    const gen::Questionnaire& questionnaire)
{
    return json{{"sessionId", session_id},
                {"submissionId", submission_id},
                {"questionnaire", gen::to_instructor_json(questionnaire)}};
}

json graded_payload(const std::string& session_id, const assess::Answers& answers,
                    const assess::GradeReport& report, const gen::Questionnaire& questionnaire)
{
    return json{{"sessionId", session_id},
                {"answers", assess::answers_to_json(answers)},
                {"report", assess::grade_report_to_json(report, questionnaire)}};
}

json course_points_payload(const std::map<std::string, double>& points)
{
    json p = json::object();
    for (const auto& [sid, v] : points) {
        p[sid] = v;
    }
    return json{{"points", p}};
}

} // namespace qlc::service
