#include <cstdio>
#include <exception>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv)
{
    using namespace qlc::cli;

    CLI::App app{"qlc - questions about learners' code"};
    app.require_subcommand(1);

    ParseArgs parse_args;
    auto* parse = app.add_subcommand("parse", "Parse a program and print its syntax tree");
    parse->add_option("file", parse_args.file, "Program file")->required()->check(CLI::ExistingFile);
    parse->add_flag("--json", parse_args.json, "Print the tree as JSON");

    RunArgs run_args;
    auto* run = app.add_subcommand("run", "Run a program with scripted input");
    run->add_option("file", run_args.file, "Program file")->required()->check(CLI::ExistingFile);
    run->add_option("--stdin-script", run_args.stdin_script, "One input line per input() call")
        ->check(CLI::ExistingFile);
    run->add_option("--step-limit", run_args.step_limit, "Statements executed before giving up")
        ->check(CLI::PositiveNumber);
    run->add_flag("--trace-json", run_args.trace_json, "Print the execution trace as JSON");
    run->add_option("--call", run_args.call, "Call this top-level function instead of running the module");

    AnalyzeArgs analyze_args;
    auto* analyze = app.add_subcommand("analyze", "Run one static analysis");
    analyze->add_option("file", analyze_args.file, "Program file")->required()->check(CLI::ExistingFile);
    analyze->add_option("--report", analyze_args.report, "Which analysis")
        ->required()
        ->check(CLI::IsMember({"identifiers", "exceptions", "purposes"}));
    analyze->add_flag("--json", analyze_args.json, "Print JSON");
    analyze->add_option("--sentinel", analyze_args.sentinel, "Input value that ends the program");

    GenerateArgs generate_args;
    auto* generate = app.add_subcommand("generate", "Generate a questionnaire for a program");
    generate->add_option("file", generate_args.file, "Program file")->required()->check(CLI::ExistingFile);
    generate->add_option("--seed", generate_args.seed, "Generation seed")->required();
    auto* json_flag = generate->add_flag("--json", generate_args.json, "Instructor form with answers");
    auto* student_flag = generate->add_flag("--student-json", generate_args.student_json, "Student form");
    json_flag->excludes(student_flag);

    TestArgs test_args;
    auto* test = app.add_subcommand("test", "Run an exercise's functional tests");
    test->add_option("file", test_args.file, "Program file")->required()->check(CLI::ExistingFile);
    test->add_option("--suite", test_args.suite, "Exercise JSON")->required()->check(CLI::ExistingFile);
    test->add_flag("--json", test_args.json, "Print JSON");

    GradeArgs grade_args;
    auto* grade = app.add_subcommand("grade", "Grade answers against a questionnaire");
    grade->add_option("--questionnaire", grade_args.questionnaire, "Instructor-form questionnaire JSON")
        ->required()
        ->check(CLI::ExistingFile);
    grade->add_option("--answers", grade_args.answers, "Answers JSON")->required()->check(CLI::ExistingFile);
    grade->add_option("--points", grade_args.points, "Points for an all-correct questionnaire");

    StatsArgs stats_args;
    auto* stats = app.add_subcommand("stats", "Success rates and group comparison from an answer log");
    stats->add_option("--log", stats_args.log, "Answer log CSV")->required()->check(CLI::ExistingFile);
    stats->add_option("--course-points", stats_args.course_points, "sessionId,points CSV")
        ->check(CLI::ExistingFile);
    stats->add_option("--question", stats_args.question, "Q1, Q2 or Q3")
        ->required()
        ->check(CLI::IsMember({"Q1", "Q2", "Q3"}));
    stats->add_option("--tests", stats_args.tests, "Comparisons for the Bonferroni correction")
        ->check(CLI::PositiveNumber);
    stats->add_option("--alpha", stats_args.alpha, "Family-wise significance level")->check(CLI::Range(0.0, 1.0));
    stats->add_flag("--json", stats_args.json, "Print JSON");

    ServeArgs serve_args;
    auto* serve = app.add_subcommand("serve", "Run the HTTP service");
    serve->add_option("--host", serve_args.host, "Address to listen on");
    serve->add_option("--port", serve_args.port, "Port (0 picks one)")->check(CLI::Range(0, 65535));
    serve->add_option("--data-dir", serve_args.data_dir, "Event log and salt directory")->required();
    serve->add_option("--exercises", serve_args.exercises, "Directory of exercise JSON files")
        ->required()
        ->check(CLI::ExistingDirectory);
    serve->add_option("--static", serve_args.static_dir, "Directory of web client assets")
        ->check(CLI::ExistingDirectory);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsageError;
    }

    try {
        if (*parse) {
            return cmd_parse(parse_args);
        }
        if (*run) {
            return cmd_run(run_args);
        }
        if (*analyze) {
            return cmd_analyze(analyze_args);
        }
        if (*generate) {
            return cmd_generate(generate_args);
        }
        if (*test) {
            return cmd_test(test_args);
        }
        if (*grade) {
            return cmd_grade(grade_args);
        }
        if (*stats) {
            return cmd_stats(stats_args);
        }
        if (*serve) {
            return cmd_serve(serve_args);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "qlc: %s\n", e.what());
        return kUsageError;
    }
    return kUsageError;
}
