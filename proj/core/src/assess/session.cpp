#include "qlc/assess/session.hpp"

#include <algorithm>

#include "qlc/common/hash.hpp"
#include "qlc/gen/generator.hpp"
#include "qlc/lang/parser.hpp"

namespace qlc::assess {

using nlohmann::json;
using Code = AssessmentError::Code;

int SessionState::best_program_points() const
{
    int best = 0;
    for (const SubmissionRecord& s : submissions) {
        best = std::max(best, s.program_points);
    }
    return best;
}

int SessionState::qlc_points() const
{
    return questionnaire && questionnaire->answered ? questionnaire->qlc_points : 0;
}

int SessionState::total_points() const
{
    return best_program_points() + qlc_points();
}

int SessionState::submissions_remaining(const ExerciseSpec& spec) const
{
    return std::max(0, spec.max_submissions - static_cast<int>(submissions.size()));
}

SubmissionRecord evaluate_submission(const ExerciseSpec& spec, const std::string& session_id,
                                     const std::string& submission_id, const std::string& source,
                                     const std::string& timestamp)
{
    SubmissionRecord r;
    r.submission_id = submission_id;
    r.session_id = session_id;
    r.source = source;
    r.source_hash = source_hash(source);
    r.timestamp = timestamp;
    r.parse_error = parse_diagnostic(source);
    r.test_results = run_functional_tests(source, spec);
    r.program_points =
        program_points(passed_count(r.test_results), static_cast<int>(r.test_results.size()), spec.program_points_max);
    return r;
}

void check_can_submit(const SessionState& session, const ExerciseSpec& spec)
{
    if (static_cast<int>(session.submissions.size()) >= spec.max_submissions) {
        throw AssessmentError(Code::LimitExceeded, "all " + std::to_string(spec.max_submissions) +
                                                       " submissions have been used");
    }
}

void apply_submission(SessionState& session, const ExerciseSpec& spec, SubmissionRecord record)
{
    check_can_submit(session, spec);
    session.submissions.push_back(std::move(record));
}

const SubmissionRecord& submit(SessionState& session, const ExerciseSpec& spec, const std::string& source,
                               const std::string& submission_id, const std::string& timestamp)
{
    check_can_submit(session, spec);
    apply_submission(session, spec, evaluate_submission(spec, session.session_id, submission_id, source, timestamp));
    return session.submissions.back();
}

const SubmissionRecord& questionnaire_source(const SessionState& session)
{
    if (session.questionnaire) {
        throw AssessmentError(Code::AlreadyOpened, "the questionnaire has already been opened");
    }
    if (session.submissions.empty()) {
        throw AssessmentError(Code::NotEligible, "submit a program before opening the questionnaire");
    }
    for (auto it = session.submissions.rbegin(); it != session.submissions.rend(); ++it) {
        if (!it->parse_error) {
            return *it;
        }
    }
    throw AssessmentError(Code::NotEligible, "no submission parses, so no questions can be generated");
}

gen::Questionnaire build_questionnaire(const SessionState& session, const ExerciseSpec& spec, std::uint64_t seed)
{
    const SubmissionRecord& source = questionnaire_source(session);
    lang::Ast ast = lang::parse_source(source.source);
    try {
        return gen::generate_for_source(ast, source.source, seed, analysis::PurposeOptions{spec.sentinel});
    } catch (const gen::GenerationError& e) {
        throw AssessmentError(Code::NotEligible, e.what());
    }
}

void apply_opened(SessionState& session, gen::Questionnaire questionnaire, const std::string& submission_id)
{
    if (session.questionnaire) {
        throw AssessmentError(Code::AlreadyOpened, "the questionnaire has already been opened");
    }
    QuestionnaireState state;
    state.questionnaire = std::move(questionnaire);
    state.opened_at_submission_id = submission_id;
    session.questionnaire = std::move(state);
}

const gen::Questionnaire& open_questionnaire(SessionState& session, const ExerciseSpec& spec, std::uint64_t seed)
{
    gen::Questionnaire q = build_questionnaire(session, spec, seed);
    apply_opened(session, std::move(q), questionnaire_source(session).submission_id);
    return session.questionnaire->questionnaire;
}

GradeReport prepare_grade(const SessionState& session, const ExerciseSpec& spec, const Answers& answers)
{
    if (!session.questionnaire) {
        throw AssessmentError(Code::NotOpened, "the questionnaire has not been opened");
    }
    if (session.questionnaire->answered) {
        throw AssessmentError(Code::AlreadyAnswered, "the questionnaire has already been answered");
    }
    return grade_answers(session.questionnaire->questionnaire, answers, spec.qlc_points_max);
}

void apply_grade(SessionState& session, const Answers& answers, GradeReport report)
{
    if (!session.questionnaire) {
        throw AssessmentError(Code::NotOpened, "the questionnaire has not been opened");
    }
    if (session.questionnaire->answered) {
        throw AssessmentError(Code::AlreadyAnswered, "the questionnaire has already been answered");
    }
    QuestionnaireState& q = *session.questionnaire;
    q.answered = true;
    q.answers = answers;
    q.qlc_points = report.qlc_points;
    q.report = std::move(report);
}

const GradeReport& answer_questionnaire(SessionState& session, const ExerciseSpec& spec, const Answers& answers)
{
    GradeReport report = prepare_grade(session, spec, answers);
    apply_grade(session, answers, std::move(report));
    return *session.questionnaire->report;
}

json test_results_to_json(const std::vector<TestResult>& results)
{
    json out = json::array();
    for (const TestResult& r : results) {
        out.push_back(json{{"testName", r.test_name}, {"passed", r.passed}, {"diagnostic", r.diagnostic}});
    }
    return out;
}

json submission_to_json(const SubmissionRecord& r)
{
    return json{{"submissionId", r.submission_id},
                {"sessionId", r.session_id},
                {"source", r.source},
                {"sourceHash", r.source_hash},
                {"testResults", test_results_to_json(r.test_results)},
                {"programPoints", r.program_points},
                {"timestamp", r.timestamp},
                {"parseError", r.parse_error ? json(*r.parse_error) : json(nullptr)}};
}

SubmissionRecord submission_from_json(const json& j)
{
    SubmissionRecord r;
    r.submission_id = j.at("submissionId").get<std::string>();
    r.session_id = j.at("sessionId").get<std::string>();
    r.source = j.at("source").get<std::string>();
    r.source_hash = j.at("sourceHash").get<std::string>();
    for (const json& t : j.at("testResults")) {
        r.test_results.push_back(TestResult{t.at("testName").get<std::string>(), t.at("passed").get<bool>(),
                                            t.at("diagnostic").get<std::string>()});
    }
    r.program_points = j.at("programPoints").get<int>();
    r.timestamp = j.at("timestamp").get<std::string>();
    if (j.contains("parseError") && !j.at("parseError").is_null()) {
        r.parse_error = j.at("parseError").get<std::string>();
    }
    return r;
}

} // namespace qlc::assess
