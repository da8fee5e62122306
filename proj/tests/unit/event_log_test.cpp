#include <doctest.h>

#include <fstream>

#include "qlc/service/event_log.hpp"
#include "test_support.hpp"

using namespace qlc::service;
using nlohmann::json;

namespace {

std::string read_all(const std::filesystem::path& path)
{
    return qlc::testing::read_text(path);
}

void append_raw(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::app | std::ios::binary);
    out << text;
}

} // namespace

TEST_CASE("events are appended and replayed in order")
{
    qlc::testing::TempDir dir;
    const auto path = dir.path() / "events.jsonl";
    {
        EventLog log(path);
        CHECK(log.replayed().empty());
        CHECK(log.append(EventKind::SubmissionAdded, json{{"n", 1}}, "t1").seq == 1);
        CHECK(log.append(EventKind::QuestionnaireOpened, json{{"n", 2}}, "t2").seq == 2);
        CHECK(log.last_seq() == 2);
    }
    EventLog again(path);
    REQUIRE(again.replayed().size() == 2);
    CHECK(again.replayed()[0].kind == EventKind::SubmissionAdded);
    CHECK(again.replayed()[1].payload.at("n") == 2);
    CHECK(again.replayed()[1].timestamp == "t2");
    CHECK(again.append(EventKind::AnswersGraded, json::object(), "t3").seq == 3);
}

TEST_CASE("one JSON object per line")
{
    qlc::testing::TempDir dir;
    const auto path = dir.path() / "events.jsonl";
    {
        EventLog log(path);
        log.append(EventKind::CoursePointsIngested, json{{"points", {{"a", 1}}}}, "t");
    }
    std::string text = read_all(path);
    CHECK(text.back() == '\n');
    json line = json::parse(text);
    CHECK(line.at("seq") == 1);
    CHECK(line.at("kind") == "CoursePointsIngested");
}

TEST_CASE("a torn final line is dropped")
{
    qlc::testing::TempDir dir;
    const auto path = dir.path() / "events.jsonl";
    {
        EventLog log(path);
        log.append(EventKind::SubmissionAdded, json{{"n", 1}}, "t1");
    }
    const std::string intact = read_all(path);
    append_raw(path, R"({"seq":2,"kind":"Submissio)");
    {
        EventLog log(path);
        CHECK(log.replayed().size() == 1);
        CHECK(read_all(path) == intact);
        CHECK(log.append(EventKind::SubmissionAdded, json{{"n", 2}}, "t2").seq == 2);
    }
    EventLog again(path);
    CHECK(again.replayed().size() == 2);
}

TEST_CASE("damage before the last line is an error")
{
    qlc::testing::TempDir dir;
    const auto path = dir.path() / "events.jsonl";
    append_raw(path, "{broken\n");
    {
        std::ofstream out(path, std::ios::app);
        out << event_to_json(EventRecord{1, EventKind::SubmissionAdded, json::object(), "t"}).dump() << "\n";
    }
    CHECK_THROWS_AS(EventLog{path}, EventLogError);
}

TEST_CASE("sequence numbers must increase")
{
    qlc::testing::TempDir dir;
    const auto path = dir.path() / "events.jsonl";
    {
        std::ofstream out(path);
        out << event_to_json(EventRecord{1, EventKind::SubmissionAdded, json::object(), "t"}).dump() << "\n";
        out << event_to_json(EventRecord{1, EventKind::SubmissionAdded, json::object(), "t"}).dump() << "\n";
    }
    CHECK_THROWS_AS(EventLog{path}, EventLogError);
}

TEST_CASE("event JSON round trips")
{
    EventRecord e{7, EventKind::AnswersGraded, json{{"a", {1, 2}}}, "2026-01-01T00:00:00.000Z"};
    CHECK(event_from_json(event_to_json(e)) == e);
    for (EventKind k : {EventKind::SubmissionAdded, EventKind::QuestionnaireOpened, EventKind::AnswersGraded,
                        EventKind::CoursePointsIngested}) {
        CHECK(event_kind_from_string(to_string(k)) == k);
    }
    CHECK_FALSE(event_kind_from_string("Nope").has_value());
}
