#include "qlc/assess/functional.hpp"

#include <cmath>
#include <cstdlib>
#include <regex>

#include "qlc/lang/lexer.hpp"
#include "qlc/lang/parser.hpp"

namespace qlc::assess {

using interp::ExecTrace;
using interp::FaultKind;

namespace {

std::string output_preview(const std::vector<std::string>& lines)
{
    std::string text;
    for (const std::string& l : lines) {
        if (!text.empty()) {
            text += " | ";
        }
        text += l;
    }
    if (text.size() > 200) {
        text = text.substr(0, 200) + "...";
    }
    return text.empty() ? "(no output)" : text;
}

// Empty when the expectation holds, otherwise what went wrong.
std::string check(const Expectation& e, const ExecTrace& trace, const std::vector<std::string>& output)
{
    const interp::RuntimeFault* fault = trace.fault();
    switch (e.kind) {
    case Expectation::Kind::Terminates:
        if (fault != nullptr && fault->kind == FaultKind::StepLimitExceeded) {
            return "the program did not stop (step limit reached near line " + std::to_string(fault->line) + ")";
        }
        return {};
    case Expectation::Kind::NoFault:
        return fault == nullptr ? std::string() : fault->describe();
    case Expectation::Kind::OutputNumber: {
        if (fault != nullptr) {
            return fault->describe();
        }
        std::optional<double> got = last_number(output);
        if (!got) {
            return "expected output " + interp::format_float(e.value) + " but the output has no number: " +
                   output_preview(output);
        }
        if (!(std::fabs(*got - e.value) <= e.tolerance)) {
            return "expected output " + interp::format_float(e.value) + " but the last number printed was " +
                   interp::format_float(*got);
        }
        return {};
    }
    case Expectation::Kind::ReturnedValue: {
        if (fault != nullptr) {
            return fault->describe();
        }
        const interp::Value& v = *trace.value();
        if (!v.is_number() || !(std::fabs(v.to_double() - e.value) <= e.tolerance)) {
            return "expected the function to return " + interp::format_float(e.value) + " but it returned " +
                   v.repr();
        }
        return {};
    }
    }
    return "unknown expectation";
}

std::vector<TestResult> fail_all(const ExerciseSpec& spec, const std::string& diagnostic)
{
    std::vector<TestResult> out;
    for (const FunctionalTestCase& t : spec.tests) {
        out.push_back(TestResult{t.name, false, diagnostic});
    }
    return out;
}

bool is_blank(std::string_view source)
{
    return source.find_first_not_of(" \t\r\n\f") == std::string_view::npos;
}

} // namespace

std::optional<std::string> parse_diagnostic(std::string_view source)
{
    if (is_blank(source)) {
        return std::string("1:1: the submission is empty");
    }
    try {
        lang::parse_source(source);
        return std::nullopt;
    } catch (const lang::LexError& e) {
        return std::string(e.what());
    } catch (const lang::ParseError& e) {
        return std::string(e.what());
    }
}

std::vector<TestResult> run_functional_tests(std::string_view source, const ExerciseSpec& spec)
{
    if (is_blank(source)) {
        return fail_all(spec, "syntax error at 1:1: the submission is empty");
    }
    lang::Ast ast;
    try {
        ast = lang::parse_source(source);
    } catch (const lang::LexError& e) {
        return fail_all(spec, std::string("syntax error at ") + e.what());
    } catch (const lang::ParseError& e) {
        return fail_all(spec, std::string("syntax error at ") + e.what());
    }

    std::vector<TestResult> out;
    for (const FunctionalTestCase& t : spec.tests) {
        ExecTrace trace;
        try {
            trace = interp::call_function(ast, spec.entry_function, {}, interp::IoScript{t.inputs},
                                          spec.step_limit);
        } catch (const interp::UnknownFunction&) {
            return fail_all(spec, "the program does not define " + spec.entry_function + "()");
        }
        std::vector<std::string> output = trace.stdout_lines;
        if (const interp::Value* v = trace.value(); v != nullptr && !v->is_none()) {
            output.push_back(v->str());
        }
        TestResult result{t.name, true, ""};
        for (const Expectation& e : t.expect) {
            std::string problem = check(e, trace, output);
            if (!problem.empty()) {
                result.passed = false;
                result.diagnostic = problem;
                break;
            }
        }
        out.push_back(std::move(result));
    }
    return out;
}

int program_points(int passed, int total, int points_max)
{
    if (total <= 0) {
        return 0;
    }
    return static_cast<int>(std::lround(static_cast<double>(points_max) * passed / total));
}

int passed_count(const std::vector<TestResult>& results)
{
    int n = 0;
    for (const TestResult& r : results) {
        n += r.passed ? 1 : 0;
    }
    return n;
}

std::optional<double> last_number(const std::vector<std::string>& lines)
{
    static const std::regex number(R"([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)");
    std::optional<double> found;
    for (const std::string& line : lines) {
        for (auto it = std::sregex_iterator(line.begin(), line.end(), number); it != std::sregex_iterator(); ++it) {
            found = std::strtod(it->str().c_str(), nullptr);
        }
    }
    return found;
}

} // namespace qlc::assess
