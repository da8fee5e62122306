#include <doctest.h>

#include <set>

#include "qlc/assess/functional.hpp"
#include "test_support.hpp"

using namespace qlc::assess;

namespace {

std::set<std::string> failed(const std::vector<TestResult>& results)
{
    std::set<std::string> out;
    for (const TestResult& r : results) {
        if (!r.passed) {
            out.insert(r.test_name);
        }
    }
    return out;
}

const TestResult& result_named(const std::vector<TestResult>& results, const std::string& name)
{
    for (const TestResult& r : results) {
        if (r.test_name == name) {
            return r;
        }
    }
    throw std::runtime_error("no result " + name);
}

} // namespace

TEST_CASE("F1 passes every test")
{
    auto results = run_functional_tests(qlc::testing::f1_source(), qlc::testing::rainfall_spec());
    CHECK(results.size() == 4);
    CHECK(failed(results).empty());
    CHECK(program_points(passed_count(results), 4, 95) == 95);
    for (const TestResult& r : results) {
        CHECK(r.diagnostic.empty());
    }
    CHECK(failed(run_functional_tests(qlc::testing::f1_source(), qlc::testing::rainfall_extended_spec())).empty());
}

TEST_CASE("mutants fail exactly their tests")
{
    const ExerciseSpec spec = qlc::testing::rainfall_extended_spec();
    auto no_try = run_functional_tests(qlc::testing::fixture("mutants/no_try.py"), spec);
    CHECK(failed(no_try) == std::set<std::string>{"T2", "T3"});
    CHECK(result_named(no_try, "T2").diagnostic.find("ValueError") != std::string::npos);

    auto no_filter = run_functional_tests(qlc::testing::fixture("mutants/no_negative_filter.py"), spec);
    CHECK(failed(no_filter) == std::set<std::string>{"T5"});

    auto no_guard = run_functional_tests(qlc::testing::fixture("mutants/no_zero_guard.py"), spec);
    CHECK(failed(no_guard) == std::set<std::string>{"T1", "T2"});
    CHECK(result_named(no_guard, "T1").diagnostic.find("ZeroDivisionError") != std::string::npos);
}

TEST_CASE("the corpus passes the extended suite")
{
    const ExerciseSpec spec = qlc::testing::rainfall_extended_spec();
    for (const auto& path : qlc::testing::corpus_files()) {
        CAPTURE(path.filename().string());
        auto results = run_functional_tests(qlc::testing::read_text(path), spec);
        for (const TestResult& r : results) {
            CAPTURE(r.test_name);
            CAPTURE(r.diagnostic);
            CHECK(r.passed);
        }
    }
}

TEST_CASE("program points")
{
    CHECK(program_points(0, 4, 95) == 0);
    CHECK(program_points(1, 4, 95) == 24);
    CHECK(program_points(2, 4, 95) == 48);
    CHECK(program_points(3, 4, 95) == 71);
    CHECK(program_points(4, 4, 95) == 95);
    CHECK(program_points(0, 0, 95) == 0);
}

TEST_CASE("programs that cannot run fail every test")
{
    const ExerciseSpec spec = qlc::testing::rainfall_spec();
    auto syntax = run_functional_tests("def rain(:\n    pass\n", spec);
    CHECK(failed(syntax).size() == 4);
    CHECK_FALSE(syntax[0].diagnostic.empty());

    auto missing = run_functional_tests("def drizzle():\n    return 1\n", spec);
    CHECK(failed(missing).size() == 4);
    CHECK(missing[0].diagnostic.find("rain") != std::string::npos);

    auto blank = run_functional_tests("", spec);
    CHECK(failed(blank).size() == 4);
}

TEST_CASE("a program that never stops hits the step limit")
{
    auto results = run_functional_tests("def rain():\n    while True:\n        pass\n", qlc::testing::rainfall_spec());
    CHECK(failed(results).size() == 4);
    CHECK(results[0].diagnostic.find("did not stop") != std::string::npos);
}

TEST_CASE("output number uses the printed text and the returned value")
{
    std::string printer = "def rain():\n    total = 0\n    count = 0\n    while True:\n        s = input()\n"
                          "        if s == '-999':\n            break\n        try:\n            total += float(s)\n"
                          "            count += 1\n        except ValueError:\n            pass\n"
                          "    if count > 0:\n        print('Average:', total / count)\n";
    auto results = run_functional_tests(printer, qlc::testing::rainfall_spec());
    CHECK(result_named(results, "T3").passed);
    CHECK(result_named(results, "T4").passed);
}

TEST_CASE("last number")
{
    CHECK(last_number({"Average: 1.5"}) == doctest::Approx(1.5));
    CHECK(last_number({"2 then 3", "none here"}) == doctest::Approx(3));
    CHECK(last_number({"-4.25e1"}) == doctest::Approx(-42.5));
    CHECK_FALSE(last_number({"abc", ""}).has_value());
    CHECK_FALSE(last_number({}).has_value());
}

TEST_CASE("parse diagnostics")
{
    CHECK_FALSE(parse_diagnostic(qlc::testing::f1_source()).has_value());
    auto diag = parse_diagnostic("x = (1\n");
    REQUIRE(diag.has_value());
    CHECK(diag->find(':') != std::string::npos);
    CHECK(parse_diagnostic("   \n\n").has_value());
}
