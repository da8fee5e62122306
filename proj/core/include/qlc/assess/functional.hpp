#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qlc/assess/exercise.hpp"
#include "qlc/interp/interpreter.hpp"

namespace qlc::assess {

struct TestResult {
    std::string test_name;
    bool passed = false;
    // Empty on success; otherwise the fault or the first mismatch.
    std::string diagnostic;
    bool operator==(const TestResult&) const = default;
};

// Each test imports the program and calls the entry function with the
// test's inputs. The output checked by numeric expectations is the captured
// stdout followed by the returned value (when not None), as a main guard
// printing the call would show it. If the source does not parse or lacks the
// entry function, every test fails with that diagnostic.
std::vector<TestResult> run_functional_tests(std::string_view source, const ExerciseSpec& spec);

// round(max × passed / total), halves away from zero.
int program_points(int passed, int total, int points_max);
int passed_count(const std::vector<TestResult>& results);

// The last number written in the text, if any.
std::optional<double> last_number(const std::vector<std::string>& lines);

// Parse problems of a submission as "line:col: message", or nullopt. A
// blank submission counts as a parse problem.
std::optional<std::string> parse_diagnostic(std::string_view source);

} // namespace qlc::assess
