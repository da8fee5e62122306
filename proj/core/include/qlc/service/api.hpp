#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "qlc/service/event_log.hpp"
#include "qlc/service/store.hpp"

namespace qlc::service {

struct HttpResponse {
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
};

struct ServiceConfig {
    std::filesystem::path data_dir;
    std::vector<assess::ExerciseSpec> exercises;
    // Overrides QLC_SEED_SALT and the salt file in the data directory.
    std::optional<std::string> seed_salt;
    // ISO-8601 timestamps; defaults to the system clock in UTC.
    std::function<std::string()> clock;
};

// Error raised by an operation, carrying its HTTP status.
class ApiError : public Error {
public:
    ApiError(int status, std::string code, const std::string& message)
        : Error(message), status_(status), code_(std::move(code))
    {
    }
    int status() const { return status_; }
    const std::string& code() const { return code_; }

private:
    int status_;
    std::string code_;
};

// The HTTP API without the transport. Replays the event log on
// construction; every state change is logged before it is applied.
//
//   POST /api/exercises/{id}/submissions      {sessionId, source}
//   POST /api/sessions/{sid}/questionnaire
//   POST /api/questionnaires/{qid}/answers    {answers: {questionId: [optionId...]}}
//   GET  /api/analytics/exercises/{id}
//   POST /api/analytics/course-points         CSV "sessionId,points"
//   GET  /api/sessions/{sid}
//   GET  /api/exercises
class Service {
public:
    explicit Service(ServiceConfig config);

    HttpResponse handle(std::string_view method, std::string_view path, std::string_view body);

    nlohmann::json submit(std::string_view exercise_id, const nlohmann::json& body, int& status);
    nlohmann::json open_questionnaire(std::string_view session_id);
    nlohmann::json answer(std::string_view questionnaire_id, const nlohmann::json& body);
    nlohmann::json analytics(std::string_view exercise_id) const;
    nlohmann::json ingest_course_points(std::string_view csv);
    nlohmann::json session_view(std::string_view session_id) const;
    nlohmann::json exercise_list() const;

    std::uint64_t seed_for(std::string_view session_id, std::string_view source_hash) const;
    const std::string& salt() const { return salt_; }

    // Copy of the current state, for inspection.
    Store snapshot() const;

private:
    std::string now() const;

    ServiceConfig config_;
    std::string salt_;
    mutable std::shared_mutex mutex_;
    Store store_;
    std::unique_ptr<EventLog> log_;
};

// Reads or creates the server salt: QLC_SEED_SALT if set, otherwise a random
// value persisted as `salt` in the data directory.
std::string load_or_create_salt(const std::filesystem::path& data_dir);

} // namespace qlc::service
