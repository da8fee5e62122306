#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace qlc::cli {

// Process exit codes.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kUsageError = 2;
inline constexpr int kSyntaxError = 3;

struct ParseArgs {
    std::string file;
    bool json = false;
};

struct RunArgs {
    std::string file;
    std::string stdin_script;
    std::int64_t step_limit = 100'000;
    bool trace_json = false;
    std::string call;
};

struct AnalyzeArgs {
    std::string file;
    std::string report;
    bool json = false;
    std::int64_t sentinel = -999;
};

struct GenerateArgs {
    std::string file;
    std::uint64_t seed = 0;
    bool json = false;
    bool student_json = false;
};

struct TestArgs {
    std::string file;
    std::string suite;
    bool json = false;
};

struct GradeArgs {
    std::string questionnaire;
    std::string answers;
    int points = 5;
};

struct StatsArgs {
    std::string log;
    std::string course_points;
    std::string question;
    int tests = 3;
    double alpha = 0.05;
    bool json = false;
};

struct ServeArgs {
    std::string host = "127.0.0.1";
    int port = 8080;
    std::string data_dir;
    std::string exercises;
    std::string static_dir;
};

int cmd_parse(const ParseArgs& args);
int cmd_run(const RunArgs& args);
int cmd_analyze(const AnalyzeArgs& args);
int cmd_generate(const GenerateArgs& args);
int cmd_test(const TestArgs& args);
int cmd_grade(const GradeArgs& args);
int cmd_stats(const StatsArgs& args);
int cmd_serve(const ServeArgs& args);

} // namespace qlc::cli
