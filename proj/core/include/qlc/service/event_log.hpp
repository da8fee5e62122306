#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qlc/common/error.hpp"

namespace qlc::service {

enum class EventKind { SubmissionAdded, QuestionnaireOpened, AnswersGraded, CoursePointsIngested };

std::string_view to_string(EventKind kind);
std::optional<EventKind> event_kind_from_string(std::string_view text);

struct EventRecord {
    std::uint64_t seq = 0;
    EventKind kind = EventKind::SubmissionAdded;
    nlohmann::json payload;
    std::string timestamp;
    bool operator==(const EventRecord&) const = default;
};

nlohmann::json event_to_json(const EventRecord& event);
EventRecord event_from_json(const nlohmann::json& json);

class EventLogError : public Error {
public:
    using Error::Error;
};

// Append-only JSON-Lines file. Each append is flushed and synced before it
// returns. On open, a final line that was cut short by a crash is dropped
// (and truncated away); damage anywhere else is an error.
class EventLog {
public:
    explicit EventLog(std::filesystem::path path);
    ~EventLog();
    EventLog(const EventLog&) = delete;
    EventLog& operator=(const EventLog&) = delete;

    // Events present when the log was opened, in order.
    const std::vector<EventRecord>& replayed() const { return replayed_; }

    const EventRecord& append(EventKind kind, nlohmann::json payload, std::string timestamp);

    std::uint64_t last_seq() const { return last_seq_; }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
    std::FILE* file_ = nullptr;
    std::vector<EventRecord> replayed_;
    EventRecord last_;
    std::uint64_t last_seq_ = 0;
};

} // namespace qlc::service
