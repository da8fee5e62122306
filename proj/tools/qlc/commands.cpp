#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <pthread.h>

#include <nlohmann/json.hpp>

#include "qlc/analysis/except_flow.hpp"
#include "qlc/analysis/identifiers.hpp"
#include "qlc/analysis/purposes.hpp"
#include "qlc/analysis/report_json.hpp"
#include "qlc/assess/exercise.hpp"
#include "qlc/assess/functional.hpp"
#include "qlc/assess/grading.hpp"
#include "qlc/gen/generator.hpp"
#include "qlc/gen/questionnaire_json.hpp"
#include "qlc/interp/interpreter.hpp"
#include "qlc/interp/trace_json.hpp"
#include "qlc/lang/ast_json.hpp"
#include "qlc/lang/lexer.hpp"
#include "qlc/lang/parser.hpp"
#include "qlc/service/api.hpp"
#include "qlc/service/http_server.hpp"
#include "qlc/stats/answer_log.hpp"

namespace qlc::cli {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot read " + path);
    }
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

json read_json(const std::string& path)
{
    json j = json::parse(read_file(path), nullptr, false);
    if (j.is_discarded()) {
        throw Error(path + " is not valid JSON");
    }
    return j;
}

std::vector<std::string> read_lines(const std::string& path)
{
    std::vector<std::string> lines;
    std::istringstream in(read_file(path));
    for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        lines.push_back(line);
    }
    return lines;
}

// Parses `file`, or prints the diagnostic and returns nullopt.
std::optional<lang::Ast> parse_or_report(const std::string& file, const std::string& source)
{
    try {
        return lang::parse_source(source);
    } catch (const lang::LexError& e) {
        std::fprintf(stderr, "%s:%s\n", file.c_str(), e.what());
    } catch (const lang::ParseError& e) {
        std::fprintf(stderr, "%s:%s\n", file.c_str(), e.what());
    }
    return std::nullopt;
}

void print_outline(const json& stmts, int depth)
{
    for (const json& s : stmts) {
        std::string kind = s.value("kind", "?");
        int line = s.contains("span") ? s["span"].value("startLine", 0) : 0;
        std::printf("%*s%d: %s", depth * 2, "", line, kind.c_str());
        if (s.contains("name") && s["name"].is_string()) {
            std::printf(" %s", s["name"].get<std::string>().c_str());
        }
        std::printf("\n");
        if (s.contains("body")) {
            print_outline(s["body"], depth + 1);
        }
        for (const char* key : {"elifs", "handlers"}) {
            if (s.contains(key)) {
                for (const json& clause : s[key]) {
                    int clause_line = clause.contains("span") ? clause["span"].value("startLine", 0) : 0;
                    std::printf("%*s%d: %s\n", depth * 2, "", clause_line, key[0] == 'e' ? "Elif" : "Handler");
                    print_outline(clause["body"], depth + 1);
                }
            }
        }
        if (s.contains("orelse") && s["orelse"].is_array()) {
            std::printf("%*selse\n", depth * 2, "");
            print_outline(s["orelse"], depth + 1);
        }
    }
}

void print_questionnaire(const gen::Questionnaire& q)
{
    std::printf("questionnaire %s (seed %llu)\n", q.id.c_str(), static_cast<unsigned long long>(q.seed));
    for (const gen::Qlc& question : q.questions) {
        std::printf("\n%s [%s] %s\n", question.id.c_str(), std::string(gen::short_name(question.type)).c_str(),
                    question.prompt.c_str());
        for (const gen::AnswerOption& o : question.options) {
            std::printf("  %s %-8s %s\n", o.is_correct ? "*" : " ", o.id.c_str(), o.label.c_str());
        }
    }
    for (const std::string& reason : q.omitted) {
        std::printf("\nomitted: %s\n", reason.c_str());
    }
}

std::atomic<service::HttpServer*> g_server{nullptr};

} // namespace

int cmd_parse(const ParseArgs& args)
{
    std::string source = read_file(args.file);
    std::optional<lang::Ast> ast = parse_or_report(args.file, source);
    if (!ast) {
        return kSyntaxError;
    }
    if (args.json) {
        std::printf("%s\n", lang::ast_to_json_text(*ast).c_str());
    } else {
        print_outline(lang::ast_to_json(*ast)["body"], 0);
    }
    return kOk;
}

int cmd_run(const RunArgs& args)
{
    std::string source = read_file(args.file);
    std::optional<lang::Ast> ast = parse_or_report(args.file, source);
    if (!ast) {
        return kSyntaxError;
    }
    interp::IoScript io;
    if (!args.stdin_script.empty()) {
        io.input_lines = read_lines(args.stdin_script);
    }
    interp::ExecTrace trace = args.call.empty()
                                  ? interp::execute(*ast, io, args.step_limit)
                                  : interp::call_function(*ast, args.call, {}, io, args.step_limit);
    if (args.trace_json) {
        std::printf("%s\n", interp::trace_to_json(trace).dump(2).c_str());
    } else {
        for (const std::string& line : trace.stdout_lines) {
            std::printf("%s\n", line.c_str());
        }
        if (!args.call.empty() && trace.value() != nullptr) {
            std::printf("=> %s\n", trace.value()->repr().c_str());
        }
        if (const interp::RuntimeFault* fault = trace.fault()) {
            std::fprintf(stderr, "%s:%s\n", args.file.c_str(), fault->describe().c_str());
        }
    }
    return trace.fault() == nullptr ? kOk : kCheckFailed;
}

int cmd_analyze(const AnalyzeArgs& args)
{
    std::string source = read_file(args.file);
    std::optional<lang::Ast> ast = parse_or_report(args.file, source);
    if (!ast) {
        return kSyntaxError;
    }
    if (args.report == "identifiers") {
        analysis::IdentifierTable table = analysis::classify_identifiers(*ast);
        std::printf("%s", args.json ? (analysis::identifiers_to_json(table).dump(2) + "\n").c_str()
                                    : analysis::identifiers_to_text(table).c_str());
    } else if (args.report == "exceptions") {
        auto flows = analysis::except_sources(*ast);
        std::printf("%s", args.json ? (analysis::except_flows_to_json(flows).dump(2) + "\n").c_str()
                                    : analysis::except_flows_to_text(flows).c_str());
    } else {
        auto findings = analysis::classify_purposes(*ast, analysis::PurposeOptions{args.sentinel});
        std::printf("%s", args.json ? (analysis::purposes_to_json(findings).dump(2) + "\n").c_str()
                                    : analysis::purposes_to_text(findings).c_str());
    }
    return kOk;
}

int cmd_generate(const GenerateArgs& args)
{
    std::string source = read_file(args.file);
    std::optional<lang::Ast> ast = parse_or_report(args.file, source);
    if (!ast) {
        return kSyntaxError;
    }
    gen::Questionnaire q;
    try {
        q = gen::generate_for_source(*ast, source, args.seed);
    } catch (const gen::GenerationError& e) {
        std::fprintf(stderr, "%s: %s\n", args.file.c_str(), e.what());
        return kCheckFailed;
    }
    if (args.json) {
        std::printf("%s\n", gen::to_instructor_json(q).dump(2).c_str());
    } else if (args.student_json) {
        std::printf("%s\n", gen::to_student_json(q).dump(2).c_str());
    } else {
        print_questionnaire(q);
    }
    return kOk;
}

int cmd_test(const TestArgs& args)
{
    std::string source = read_file(args.file);
    assess::ExerciseSpec spec = assess::load_exercise(args.suite);
    std::vector<assess::TestResult> results = assess::run_functional_tests(source, spec);
    int passed = assess::passed_count(results);
    int points = assess::program_points(passed, static_cast<int>(results.size()), spec.program_points_max);
    if (args.json) {
        json out{{"exerciseId", spec.id},
                 {"testResults", assess::test_results_to_json(results)},
                 {"passed", passed},
                 {"total", results.size()},
                 {"programPoints", points}};
        std::printf("%s\n", out.dump(2).c_str());
    } else {
        for (const assess::TestResult& r : results) {
            std::printf("%s %s", r.passed ? "PASS" : "FAIL", r.test_name.c_str());
            if (!r.passed) {
                std::printf(": %s", r.diagnostic.c_str());
            }
            std::printf("\n");
        }
        std::printf("%d/%zu tests passed, %d/%d points\n", passed, results.size(), points, spec.program_points_max);
    }
    return passed == static_cast<int>(results.size()) ? kOk : kCheckFailed;
}

int cmd_grade(const GradeArgs& args)
{
    gen::Questionnaire q = gen::questionnaire_from_json(read_json(args.questionnaire));
    assess::Answers answers = assess::answers_from_json(read_json(args.answers));
    try {
        assess::GradeReport report = assess::grade_answers(q, answers, args.points);
        std::printf("%s\n", assess::grade_report_to_json(report, q).dump(2).c_str());
    } catch (const assess::AssessmentError& e) {
        std::fprintf(stderr, "%s: %s\n", std::string(assess::to_string(e.code())).c_str(), e.what());
        return kCheckFailed;
    }
    return kOk;
}

int cmd_stats(const StatsArgs& args)
{
    stats::AnswerLog log = stats::parse_answer_log_csv(read_file(args.log));
    if (!args.course_points.empty()) {
        stats::attach_course_points(log, stats::parse_course_points_csv(read_file(args.course_points)));
    }
    gen::QlcType type = *gen::qlc_type_from_short_name(args.question);

    auto rates = stats::success_rates(log);
    stats::SuccessRate rate = rates.count(type) != 0 ? rates.at(type) : stats::SuccessRate{};
    auto variants = stats::variant_success_rates(log, type);
    auto categories = stats::error_category_counts(log, type);

    std::optional<stats::QuestionComparison> comparison;
    std::string comparison_error;
    bool any_points = std::any_of(log.rows.begin(), log.rows.end(),
                                  [](const stats::AnswerRow& r) { return r.course_points.has_value(); });
    if (any_points) {
        try {
            comparison = stats::compare_by_question(log, type, args.tests, args.alpha);
        } catch (const stats::StatsError& e) {
            comparison_error = e.what();
        }
    }

    if (args.json) {
        json out{{"question", args.question},
                 {"successRate", {{"correct", rate.correct}, {"total", rate.total}, {"display", rate.display()}}},
                 {"errorCategories", categories}};
        json v = json::object();
        for (const auto& [name, r] : variants) {
            v[name] = {{"correct", r.correct}, {"total", r.total}, {"display", r.display()}};
        }
        out["variantRates"] = v;
        if (comparison) {
            const stats::GroupComparison& g = comparison->comparison;
            out["comparison"] = {{"medianT", g.median_t},
                                 {"medianF", g.median_f},
                                 {"nT", g.n_t},
                                 {"nF", g.n_f},
                                 {"df", g.df},
                                 {"U", g.u},
                                 {"pTwoSided", g.p_two_sided},
                                 {"pMethod", stats::to_string(g.p_method)},
                                 {"cles", g.cles},
                                 {"alpha", comparison->alpha},
                                 {"significant", comparison->significant}};
        } else if (!comparison_error.empty()) {
            out["comparisonError"] = comparison_error;
        }
        std::printf("%s\n", out.dump(2).c_str());
        return kOk;
    }

    std::printf("%s: %d/%d correct (%s)\n", args.question.c_str(), rate.correct, rate.total, rate.display().c_str());
    for (const auto& [name, r] : variants) {
        std::printf("  %s: %d/%d (%s)\n", name.c_str(), r.correct, r.total, r.display().c_str());
    }
    for (const auto& [name, count] : categories) {
        std::printf("  %s: %d\n", name.c_str(), count);
    }
    if (comparison) {
        const stats::GroupComparison& g = comparison->comparison;
        std::printf("course points, correct vs incorrect:\n");
        std::printf("  median T %.1f (n=%d), median F %.1f (n=%d)\n", g.median_t, g.n_t, g.median_f, g.n_f);
        std::printf("  U = %.1f, p = %.4f (%s), CLES = %s\n", g.u, g.p_two_sided,
                    std::string(stats::to_string(g.p_method)).c_str(), stats::display_decimal(g.cles, 2).c_str());
        std::printf("  alpha %s: %s\n", stats::display_decimal(comparison->alpha, 3).c_str(),
                    comparison->significant ? "significant" : "not significant");
    } else if (!comparison_error.empty()) {
        std::printf("no comparison: %s\n", comparison_error.c_str());
    }
    return kOk;
}

int cmd_serve(const ServeArgs& args)
{
    service::ServiceConfig config;
    config.data_dir = args.data_dir;
    config.exercises = assess::load_exercise_dir(args.exercises);
    service::Service svc(std::move(config));

    std::optional<std::filesystem::path> static_dir;
    if (!args.static_dir.empty()) {
        static_dir = args.static_dir;
    }
    service::HttpServer server(svc, static_dir);
    int port = server.bind(args.host, args.port);

    // Signals are taken by a dedicated thread so that stop() never runs
    // inside a signal handler.
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);
    g_server = &server;
    std::thread waiter([&signals]() {
        int sig = 0;
        sigwait(&signals, &sig);
        if (service::HttpServer* s = g_server.load()) {
            s->stop();
        }
    });

    std::printf("qlc listening on http://%s:%d\n", args.host.c_str(), port);
    std::fflush(stdout);
    server.run();

    g_server = nullptr;
    if (waiter.joinable()) {
        // run() can also end without a signal; wake the waiter.
        pthread_kill(waiter.native_handle(), SIGTERM);
        waiter.join();
    }
    return kOk;
}

} // namespace qlc::cli
