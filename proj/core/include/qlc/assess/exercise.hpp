#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qlc/common/error.hpp"

namespace qlc::assess {

class ExerciseFormatError : public Error {
public:
    using Error::Error;
};

struct Expectation {
    enum class Kind { Terminates, NoFault, OutputNumber, ReturnedValue };
    Kind kind = Kind::NoFault;
    double value = 0.0;
    double tolerance = 0.0;
    bool operator==(const Expectation&) const = default;
};

std::string_view to_string(Expectation::Kind kind);

struct FunctionalTestCase {
    std::string name;
    std::string description;
    std::vector<std::string> inputs;
    // All must hold for the test to pass.
    std::vector<Expectation> expect;
    bool operator==(const FunctionalTestCase&) const = default;
};

struct ExerciseSpec {
    std::string id;
    std::string title;
    std::string entry_function;
    std::int64_t sentinel = -999;
    int max_submissions = 10;
    int program_points_max = 95;
    int qlc_points_max = 5;
    std::int64_t step_limit = 100'000;
    std::vector<FunctionalTestCase> tests;
    bool operator==(const ExerciseSpec&) const = default;
};

// Format:
// {"id", "entryFunction", "sentinel", "maxSubmissions",
//  "points": {"program", "qlc"}, "tests": [{"name", "inputs", "expect"}]}
// where "expect" is one expectation object or an array of them:
// {"kind": "terminates"|"noFault"|"outputNumber"|"returnedValue",
//  "value": x, "tolerance": t}.
ExerciseSpec exercise_from_json(const nlohmann::json& json);
nlohmann::json exercise_to_json(const ExerciseSpec& spec);
ExerciseSpec load_exercise(const std::filesystem::path& path);

// Every *.json file in a directory, keyed by exercise id.
std::vector<ExerciseSpec> load_exercise_dir(const std::filesystem::path& dir);

} // namespace qlc::assess
