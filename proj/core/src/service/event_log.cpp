#include "qlc/service/event_log.hpp"

#include <fstream>
#include <sstream>

#include <unistd.h>

namespace qlc::service {

using nlohmann::json;

namespace {

constexpr EventKind kKinds[] = {EventKind::SubmissionAdded, EventKind::QuestionnaireOpened,
                                EventKind::AnswersGraded, EventKind::CoursePointsIngested};

} // namespace

std::string_view to_string(EventKind kind)
{
    switch (kind) {
    case EventKind::SubmissionAdded: return "SubmissionAdded";
    case EventKind::QuestionnaireOpened: return "QuestionnaireOpened";
    case EventKind::AnswersGraded: return "AnswersGraded";
    case EventKind::CoursePointsIngested: return "CoursePointsIngested";
    }
    return "?";
}

std::optional<EventKind> event_kind_from_string(std::string_view text)
{
    for (EventKind k : kKinds) {
        if (to_string(k) == text) {
            return k;
        }
    }
    return std::nullopt;
}

json event_to_json(const EventRecord& event)
{
    return json{{"seq", event.seq},
                {"kind", to_string(event.kind)},
                {"timestamp", event.timestamp},
                {"payload", event.payload}};
}

EventRecord event_from_json(const json& j)
{
    EventRecord e;
    e.seq = j.at("seq").get<std::uint64_t>();
    auto kind = event_kind_from_string(j.at("kind").get<std::string>());
    if (!kind) {
        throw EventLogError("unknown event kind " + j.at("kind").dump());
    }
    e.kind = *kind;
    e.timestamp = j.at("timestamp").get<std::string>();
    e.payload = j.at("payload");
    return e;
}

EventLog::EventLog(std::filesystem::path path) : path_(std::move(path))
{
    std::string contents;
    if (std::filesystem::exists(path_)) {
        std::ifstream in(path_, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        contents = buf.str();
    }

    std::size_t good_end = 0;
    std::size_t start = 0;
    std::size_t line_no = 0;
    while (start < contents.size()) {
        ++line_no;
        std::size_t nl = contents.find('\n', start);
        bool last_line = nl == std::string::npos || contents.find_first_not_of(" \t\r\n", nl + 1) == std::string::npos;
        std::string line = contents.substr(start, nl == std::string::npos ? std::string::npos : nl - start);
        const std::string where = path_.string() + ": line " + std::to_string(line_no);
        if (line.find_first_not_of(" \t\r") != std::string::npos) {
            EventRecord e;
            try {
                if (nl == std::string::npos) {
                    throw EventLogError("unterminated line");
                }
                e = event_from_json(json::parse(line));
            } catch (const std::exception& ex) {
                if (last_line) {
                    break; // torn tail from an interrupted write
                }
                throw EventLogError(where + " is damaged: " + ex.what());
            }
            if (e.seq <= last_seq_) {
                throw EventLogError(where + ": sequence numbers must increase");
            }
            last_seq_ = e.seq;
            replayed_.push_back(std::move(e));
        } else if (nl == std::string::npos) {
            break;
        }
        good_end = nl + 1;
        start = nl + 1;
    }
    if (good_end != contents.size()) {
        std::filesystem::resize_file(path_, good_end);
    }

    file_ = std::fopen(path_.c_str(), "ab");
    if (file_ == nullptr) {
        throw EventLogError("cannot open event log " + path_.string());
    }
    std::fseek(file_, 0, SEEK_END);
}

EventLog::~EventLog()
{
    if (file_ != nullptr) {
        std::fclose(file_);
    }
}

const EventRecord& EventLog::append(EventKind kind, json payload, std::string timestamp)
{
    EventRecord e{last_seq_ + 1, kind, std::move(payload), std::move(timestamp)};
    std::string line = event_to_json(e).dump() + "\n";
    long before = std::ftell(file_);
    if (std::fwrite(line.data(), 1, line.size(), file_) != line.size() || std::fflush(file_) != 0 ||
        ::fsync(::fileno(file_)) != 0) {
        // Cut off the partial line so later appends stay readable.
        std::clearerr(file_);
        if (before >= 0 && ::ftruncate(::fileno(file_), before) == 0) {
            std::fseek(file_, 0, SEEK_END);
        }
        throw EventLogError("failed to write to event log " + path_.string());
    }
    last_seq_ = e.seq;
    last_ = std::move(e);
    return last_;
}

} // namespace qlc::service
