#include "qlc/service/api.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>

#include "qlc/common/hash.hpp"
#include "qlc/gen/questionnaire_json.hpp"
#include "qlc/lang/ast_json.hpp"
#include "qlc/stats/answer_log.hpp"

namespace qlc::service {

using nlohmann::json;
using Code = assess::AssessmentError::Code;

namespace {

std::string utc_now()
{
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
    char out[48];
    std::snprintf(out, sizeof out, "%s.%03dZ", buf, static_cast<int>(ms));
    return out;
}

int status_for(Code code)
{
    switch (code) {
    case Code::LimitExceeded:
    case Code::NotEligible:
    case Code::AlreadyOpened:
    case Code::NotOpened:
    case Code::AlreadyAnswered: return 409;
    case Code::MissingAnswer:
    case Code::UnknownOption:
    case Code::UnknownQuestion:
    case Code::InvalidSelection: return 400;
    }
    return 400;
}

[[noreturn]] void rethrow_assessment(const assess::AssessmentError& e)
{
    throw ApiError(status_for(e.code()), std::string(assess::to_string(e.code())), e.what());
}

json parse_body(std::string_view body)
{
    json j = json::parse(body, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw ApiError(400, "BadRequest", "request body must be a JSON object");
    }
    return j;
}

std::vector<std::string_view> split_path(std::string_view path)
{
    if (auto q = path.find('?'); q != std::string_view::npos) {
        path = path.substr(0, q);
    }
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (start < path.size()) {
        std::size_t slash = path.find('/', start);
        std::size_t end = slash == std::string_view::npos ? path.size() : slash;
        if (end > start) {
            parts.push_back(path.substr(start, end - start));
        }
        start = end + 1;
    }
    return parts;
}

json error_body(const std::string& code, const std::string& message)
{
    return json{{"error", code}, {"message", message}};
}

json rate_json(const stats::SuccessRate& r)
{
    return json{{"correct", r.correct}, {"total", r.total}, {"rate", r.rate()}, {"display", r.display()}};
}

json comparison_json(const stats::QuestionComparison& c)
{
    const stats::GroupComparison& g = c.comparison;
    return json{{"medianT", g.median_t},     {"medianF", g.median_f},
                {"nT", g.n_t},               {"nF", g.n_f},
                {"df", g.df},                {"U", g.u},
                {"pTwoSided", g.p_two_sided}, {"pMethod", stats::to_string(g.p_method)},
                {"cles", g.cles},            {"clesDisplay", stats::display_decimal(g.cles, 2)},
                {"alpha", c.alpha},          {"alphaDisplay", stats::display_decimal(c.alpha, 3)},
                {"significant", c.significant}};
}

} // namespace

std::string load_or_create_salt(const std::filesystem::path& data_dir)
{
    if (const char* env = std::getenv("QLC_SEED_SALT"); env != nullptr && *env != '\0') {
        return env;
    }
    std::filesystem::path file = data_dir / "salt";
    if (std::ifstream in(file); in) {
        std::string salt;
        std::getline(in, salt);
        if (!salt.empty()) {
            return salt;
        }
    }
    std::random_device rd;
    std::uint64_t value = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    std::string salt = to_hex(value);
    std::ofstream out(file, std::ios::trunc);
    out << salt << "\n";
    if (!out) {
        throw Error("cannot write salt file " + file.string());
    }
    return salt;
}

Service::Service(ServiceConfig config) : config_(std::move(config)), store_(config_.exercises)
{
    std::filesystem::create_directories(config_.data_dir);
    salt_ = config_.seed_salt ? *config_.seed_salt : load_or_create_salt(config_.data_dir);
    log_ = std::make_unique<EventLog>(config_.data_dir / "events.jsonl");
    for (const EventRecord& e : log_->replayed()) {
        store_.apply(e);
    }
}

std::string Service::now() const
{
    return config_.clock ? config_.clock() : utc_now();
}

std::uint64_t Service::seed_for(std::string_view session_id, std::string_view source_hash) const
{
    return hash_parts({session_id, source_hash, salt_});
}

Store Service::snapshot() const
{
    std::shared_lock lock(mutex_);
    return store_;
}

json Service::submit(std::string_view exercise_id, const json& body, int& status)
{
    const assess::ExerciseSpec* spec = store_.exercise(exercise_id);
    if (spec == nullptr) {
        throw ApiError(404, "UnknownExercise", "no exercise with id '" + std::string(exercise_id) + "'");
    }
    if (!body.contains("sessionId") || !body["sessionId"].is_string() || body["sessionId"].get<std::string>().empty() ||
        !body.contains("source") || !body["source"].is_string()) {
        throw ApiError(400, "BadRequest", "body needs a non-empty string sessionId and a string source");
    }
    std::string sid = body["sessionId"].get<std::string>();
    std::string source = body["source"].get<std::string>();

    auto check = [&]() {
        if (const assess::SessionState* s = store_.session(sid)) {
            if (s->exercise_id != spec->id) {
                throw ApiError(409, "SessionConflict", "session '" + sid + "' belongs to exercise " + s->exercise_id);
            }
            try {
                assess::check_can_submit(*s, *spec);
            } catch (const assess::AssessmentError& e) {
                rethrow_assessment(e);
            }
        }
    };
    {
        std::shared_lock lock(mutex_);
        check();
    }
    // Tests run without holding the lock.
    assess::SubmissionRecord record = assess::evaluate_submission(*spec, sid, "", source, now());

    std::unique_lock lock(mutex_);
    check();
    const assess::SessionState* existing = store_.session(sid);
    std::size_t n = existing == nullptr ? 0 : existing->submissions.size();
    record.submission_id = sid + "-s" + std::to_string(n + 1);
    const EventRecord& event =
        log_->append(EventKind::SubmissionAdded, submission_payload(spec->id, record), record.timestamp);
    store_.apply(event);

    const assess::SessionState& s = *store_.session(sid);
    json out{{"submissionId", record.submission_id},
             {"sessionId", sid},
             {"testResults", assess::test_results_to_json(record.test_results)},
             {"programPoints", record.program_points},
             {"bestProgramPoints", s.best_program_points()},
             {"submissionsRemaining", s.submissions_remaining(*spec)}};
    if (record.parse_error) {
        out["error"] = "ParseError";
        out["diagnostic"] = *record.parse_error;
        status = 422;
    } else {
        status = 200;
    }
    return out;
}

json Service::open_questionnaire(std::string_view session_id)
{
    std::unique_lock lock(mutex_);
    const assess::SessionState* s = store_.session(session_id);
    if (s == nullptr) {
        throw ApiError(409, "NotEligible", "submit a program before opening the questionnaire");
    }
    if (s->questionnaire) {
        return gen::to_student_json(s->questionnaire->questionnaire);
    }
    const assess::ExerciseSpec& spec = *store_.exercise(s->exercise_id);
    try {
        const assess::SubmissionRecord& source = assess::questionnaire_source(*s);
        gen::Questionnaire q = assess::build_questionnaire(*s, spec, seed_for(s->session_id, source.source_hash));
        const EventRecord& event = log_->append(
            EventKind::QuestionnaireOpened, opened_payload(s->session_id, source.submission_id, q), now());
        store_.apply(event);
    } catch (const assess::AssessmentError& e) {
        rethrow_assessment(e);
    }
    return gen::to_student_json(store_.session(session_id)->questionnaire->questionnaire);
}

json Service::answer(std::string_view questionnaire_id, const json& body)
{
    assess::Answers answers;
    try {
        if (!body.contains("answers")) {
            throw assess::AssessmentError(Code::MissingAnswer, "body needs an 'answers' object");
        }
        answers = assess::answers_from_json(body.at("answers"));
    } catch (const assess::AssessmentError& e) {
        rethrow_assessment(e);
    }

    std::unique_lock lock(mutex_);
    const assess::SessionState* s = store_.session_for_questionnaire(questionnaire_id);
    if (s == nullptr) {
        throw ApiError(404, "UnknownQuestionnaire", "no questionnaire with id '" + std::string(questionnaire_id) + "'");
    }
    const assess::ExerciseSpec& spec = *store_.exercise(s->exercise_id);
    try {
        assess::GradeReport report = assess::prepare_grade(*s, spec, answers);
        const gen::Questionnaire& q = s->questionnaire->questionnaire;
        const EventRecord& event =
            log_->append(EventKind::AnswersGraded, graded_payload(s->session_id, answers, report, q), now());
        store_.apply(event);
    } catch (const assess::AssessmentError& e) {
        rethrow_assessment(e);
    }
    const assess::SessionState& done = *store_.session_for_questionnaire(questionnaire_id);
    json out = assess::grade_report_to_json(*done.questionnaire->report, done.questionnaire->questionnaire);
    out["programPoints"] = done.best_program_points();
    out["totalPoints"] = done.total_points();
    return out;
}

json Service::analytics(std::string_view exercise_id) const
{
    std::shared_lock lock(mutex_);
    if (store_.exercise(exercise_id) == nullptr) {
        throw ApiError(404, "UnknownExercise", "no exercise with id '" + std::string(exercise_id) + "'");
    }
    stats::AnswerLog log = store_.answer_log(exercise_id);
    lock.unlock();

    std::set<std::string> sessions;
    for (const stats::AnswerRow& r : log.rows) {
        sessions.insert(r.session_id);
    }
    json out{{"exerciseId", exercise_id},
             {"answeredSessions", sessions.size()},
             {"successRates", json::object()},
             {"variantRates", json::object()},
             {"errorCategories", json::object()},
             {"groupComparisons", json::object()}};
    if (log.rows.empty()) {
        return out;
    }
    for (const auto& [type, rate] : stats::success_rates(log)) {
        std::string key(gen::short_name(type));
        out["successRates"][key] = rate_json(rate);
        out["errorCategories"][key] = stats::error_category_counts(log, type);
        auto variants = stats::variant_success_rates(log, type);
        if (!variants.empty()) {
            json v = json::object();
            for (const auto& [name, r] : variants) {
                v[name] = rate_json(r);
            }
            out["variantRates"][key] = std::move(v);
        }
    }

    std::vector<gen::QlcType> comparable;
    for (const auto& [type, rate] : stats::success_rates(log)) {
        bool has_t = false;
        bool has_f = false;
        for (const stats::AnswerRow& r : log.rows) {
            if (r.type == type && r.course_points) {
                (r.correct ? has_t : has_f) = true;
            }
        }
        if (has_t && has_f) {
            comparable.push_back(type);
        }
    }
    for (gen::QlcType type : comparable) {
        stats::QuestionComparison c =
            stats::compare_by_question(log, type, static_cast<int>(comparable.size()));
        out["groupComparisons"][std::string(gen::short_name(type))] = comparison_json(c);
    }
    return out;
}

json Service::ingest_course_points(std::string_view csv)
{
    std::map<std::string, double> points;
    try {
        points = stats::parse_course_points_csv(csv);
    } catch (const stats::StatsError& e) {
        throw ApiError(400, "MalformedCsv", e.what());
    }
    std::unique_lock lock(mutex_);
    if (!points.empty()) {
        const EventRecord& event = log_->append(EventKind::CoursePointsIngested, course_points_payload(points), now());
        store_.apply(event);
    }
    return json{{"rowsAccepted", points.size()}};
}

json Service::session_view(std::string_view session_id) const
{
    std::shared_lock lock(mutex_);
    const assess::SessionState* s = store_.session(session_id);
    if (s == nullptr) {
        throw ApiError(404, "UnknownSession", "no session with id '" + std::string(session_id) + "'");
    }
    const assess::ExerciseSpec& spec = *store_.exercise(s->exercise_id);
    json out{{"sessionId", s->session_id},
             {"exerciseId", s->exercise_id},
             {"submissionCount", s->submissions.size()},
             {"submissionsRemaining", s->submissions_remaining(spec)},
             {"bestProgramPoints", s->best_program_points()},
             {"qlcPoints", s->qlc_points()},
             {"totalPoints", s->total_points()}};
    const assess::SubmissionRecord& latest = s->submissions.back();
    out["latestSubmission"] = json{{"submissionId", latest.submission_id},
                                   {"programPoints", latest.program_points},
                                   {"testResults", assess::test_results_to_json(latest.test_results)},
                                   {"diagnostic", latest.parse_error ? json(*latest.parse_error) : json(nullptr)}};
    if (!s->questionnaire) {
        out["questionnaireState"] = "locked";
        out["questionnaire"] = nullptr;
    } else {
        const assess::QuestionnaireState& q = *s->questionnaire;
        out["questionnaire"] = gen::to_student_json(q.questionnaire);
        if (q.answered) {
            out["questionnaireState"] = "answered";
            out["report"] = assess::grade_report_to_json(*q.report, q.questionnaire);
        } else {
            out["questionnaireState"] = "open";
        }
    }
    return out;
}

json Service::exercise_list() const
{
    json out = json::array();
    for (const assess::ExerciseSpec& e : store_.exercises()) {
        out.push_back(json{{"id", e.id},
                           {"title", e.title},
                           {"entryFunction", e.entry_function},
                           {"maxSubmissions", e.max_submissions},
                           {"tests", e.tests.size()}});
    }
    return out;
}

HttpResponse Service::handle(std::string_view method, std::string_view path, std::string_view body)
{
    std::vector<std::string_view> p = split_path(path);
    auto is = [&](std::initializer_list<std::string_view> shape) {
        if (p.size() != shape.size()) {
            return false;
        }
        std::size_t i = 0;
        for (std::string_view part : shape) {
            if (part != "*" && part != p[i]) {
                return false;
            }
            ++i;
        }
        return true;
    };
    try {
        int status = 200;
        json out;
        if (method == "POST" && is({"api", "exercises", "*", "submissions"})) {
            out = submit(p[2], parse_body(body), status);
        } else if (method == "POST" && is({"api", "sessions", "*", "questionnaire"})) {
            out = open_questionnaire(p[2]);
        } else if (method == "POST" && is({"api", "questionnaires", "*", "answers"})) {
            out = answer(p[2], parse_body(body));
        } else if (method == "GET" && is({"api", "analytics", "exercises", "*"})) {
            out = analytics(p[3]);
        } else if (method == "POST" && is({"api", "analytics", "course-points"})) {
            out = ingest_course_points(body);
        } else if (method == "GET" && is({"api", "sessions", "*"})) {
            out = session_view(p[2]);
        } else if (method == "GET" && is({"api", "exercises"})) {
            out = exercise_list();
        } else {
            return HttpResponse{404, error_body("NotFound", "no route for " + std::string(method) + " " +
                                                               std::string(path)).dump()};
        }
        return HttpResponse{status, out.dump()};
    } catch (const ApiError& e) {
        return HttpResponse{e.status(), error_body(e.code(), e.what()).dump()};
    } catch (const std::exception& e) {
        return HttpResponse{500, error_body("InternalError", e.what()).dump()};
    }
}

} // namespace qlc::service
