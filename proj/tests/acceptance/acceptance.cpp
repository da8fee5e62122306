// Prints one PASS/FAIL line per acceptance criterion and exits nonzero if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "qlc/analysis/except_flow.hpp"
#include "qlc/assess/functional.hpp"
#include "qlc/gen/generator.hpp"
#include "qlc/gen/questionnaire_json.hpp"
#include "qlc/lang/parser.hpp"
#include "qlc/service/api.hpp"
#include "qlc/stats/answer_log.hpp"
#include "qlc/stats/mann_whitney.hpp"
#include "test_support.hpp"

using namespace qlc;
using nlohmann::json;

namespace {

struct Outcome {
    bool passed = true;
    std::string detail;

    void require(bool condition, const std::string& what)
    {
        if (!condition) {
            passed = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

struct Criterion {
    std::string name;
    double budget_seconds;
    std::function<Outcome()> check;
};

std::string fmt(double v, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

Outcome cles_reproduction()
{
    Outcome out;
    const double cases[][4] = {{4932, 249, 42, 0.47}, {4716, 207, 36, 0.63}, {2124, 281, 10, 0.76}};
    for (const auto& c : cases) {
        double value = stats::cles(c[0], static_cast<int>(c[1]), static_cast<int>(c[2]));
        out.require(std::fabs(value - c[3]) <= 0.005, "cles(" + fmt(c[0], 0) + ") = " + fmt(value, 4));
    }
    if (out.passed) {
        out.detail = ".47 .63 .76";
    }
    return out;
}

Outcome success_rates()
{
    Outcome out;
    stats::AnswerLog log = testing::oracle::reference_answer_log();
    auto rates = stats::success_rates(log);
    auto variants = stats::variant_success_rates(log, gen::QlcType::LinePurpose);
    const std::string shown = rates.at(gen::QlcType::VariableNames).display() + " " +
                              rates.at(gen::QlcType::ExceptSource).display() + " " +
                              variants.at("AcceptsNewData").display() + " " +
                              variants.at("GuardsDivisionByZero").display();
    out.require(shown == "86% 85% 97% 95%", "rates " + shown);
    if (out.passed) {
        out.detail = shown;
    }
    return out;
}

Outcome bonferroni()
{
    Outcome out;
    std::string shown = stats::display_decimal(stats::bonferroni_alpha(0.05, 3), 3);
    out.require(shown == ".017", "displayed " + shown);
    if (out.passed) {
        out.detail = shown;
    }
    return out;
}

Outcome mann_whitney_oracle()
{
    Outcome out;
    std::mt19937_64 rng(20240515);
    std::uniform_int_distribution<int> total_size(2, 8);
    double worst = 0;
    for (int trial = 0; trial < 200; ++trial) {
        int n = total_size(rng);
        int n_t = std::uniform_int_distribution<int>(1, n - 1)(rng);
        std::vector<double> pool(static_cast<std::size_t>(n));
        std::uniform_real_distribution<double> value(0, 100);
        std::set<double> used;
        for (double& x : pool) {
            do {
                x = std::round(value(rng) * 100) / 100;
            } while (!used.insert(x).second);
        }
        std::vector<double> t(pool.begin(), pool.begin() + n_t);
        std::vector<double> f(pool.begin() + n_t, pool.end());
        stats::GroupComparison c = stats::mann_whitney_u(t, f);
        double u = testing::oracle::pair_count_u(t, f);
        out.require(c.u == u, "trial " + std::to_string(trial) + ": U " + fmt(c.u, 1) + " vs " + fmt(u, 1));
        double diff = std::fabs(c.p_two_sided - testing::oracle::permutation_p(t, f));
        worst = std::max(worst, diff);
        out.require(diff <= 0.02, "trial " + std::to_string(trial) + ": p off by " + fmt(diff, 4));
    }
    if (out.passed) {
        out.detail = "200 pairs, max |p - permutation p| = " + fmt(worst, 6);
    }
    return out;
}

std::set<std::string> failed_tests(const std::string& source, const assess::ExerciseSpec& spec)
{
    std::set<std::string> out;
    for (const assess::TestResult& r : assess::run_functional_tests(source, spec)) {
        if (!r.passed) {
            out.insert(r.test_name);
        }
    }
    return out;
}

Outcome functional_suite()
{
    Outcome out;
    const assess::ExerciseSpec basic = testing::rainfall_spec();
    const assess::ExerciseSpec extended = testing::rainfall_extended_spec();
    auto f1 = assess::run_functional_tests(testing::f1_source(), basic);
    int points = assess::program_points(assess::passed_count(f1), static_cast<int>(f1.size()), 95);
    out.require(f1.size() == 4 && points == 95, "F1 scored " + std::to_string(points));

    out.require(failed_tests(testing::fixture("mutants/no_try.py"), extended) == std::set<std::string>{"T2", "T3"},
                "no_try fails the wrong tests");
    out.require(failed_tests(testing::fixture("mutants/no_negative_filter.py"), extended) ==
                    std::set<std::string>{"T5"},
                "no_negative_filter fails the wrong tests");
    auto guard = assess::run_functional_tests(testing::fixture("mutants/no_zero_guard.py"), extended);
    std::set<std::string> guard_failed;
    bool division_fault = false;
    for (const assess::TestResult& r : guard) {
        if (!r.passed) {
            guard_failed.insert(r.test_name);
            division_fault = division_fault || r.diagnostic.find("ZeroDivisionError") != std::string::npos;
        }
    }
    out.require(guard_failed == std::set<std::string>{"T1", "T2"} && division_fault,
                "no_zero_guard does not fail on division");
    if (out.passed) {
        out.detail = "F1 95/95; mutants fail {T2,T3} {T5} {T1,T2}";
    }
    return out;
}

Outcome generation_contract()
{
    Outcome out;
    const auto corpus = testing::corpus_files();
    out.require(corpus.size() >= 10, "corpus has " + std::to_string(corpus.size()) + " programs");
    const assess::ExerciseSpec spec = testing::rainfall_extended_spec();
    int with_q2 = 0;
    for (const auto& path : corpus) {
        const std::string name = path.filename().string();
        std::string source = testing::read_text(path);
        out.require(failed_tests(source, spec).empty(), name + " does not pass the tests");
        lang::Ast ast = lang::parse_source(source);
        bool has_try = !analysis::except_sources(ast).empty();
        for (std::uint64_t seed : {1ULL, 7ULL, 2024ULL}) {
            gen::Questionnaire a = gen::generate_for_source(ast, source, seed);
            gen::Questionnaire b = gen::generate_for_source(lang::parse_source(source), source, seed);
            out.require(a.find_question(gen::QlcType::VariableNames) != nullptr, name + " lacks Q1");
            out.require(a.find_question(gen::QlcType::LinePurpose) != nullptr, name + " lacks Q3");
            bool q2 = a.find_question(gen::QlcType::ExceptSource) != nullptr;
            out.require(q2 == has_try, name + (has_try ? " lacks Q2" : " has Q2 without try"));
            with_q2 += q2 && seed == 1 ? 1 : 0;
            out.require(gen::to_instructor_json(a).dump() == gen::to_instructor_json(b).dump(),
                        name + " is not deterministic");
        }
    }
    if (out.passed) {
        out.detail = std::to_string(corpus.size()) + " programs, " + std::to_string(with_q2) + " with Q2";
    }
    return out;
}

Outcome static_dynamic()
{
    Outcome out;
    int checked = 0;
    int runs = 0;
    for (const auto& path : testing::corpus_files()) {
        const std::string name = path.filename().string();
        std::string source = testing::read_text(path);
        lang::Ast ast = lang::parse_source(source);
        auto flows = analysis::except_sources(ast);
        if (flows.empty()) {
            continue;
        }
        gen::Questionnaire q = gen::generate_for_source(ast, source, 7);
        const gen::Qlc* q2 = q.find_question(gen::QlcType::ExceptSource);
        if (q2 == nullptr) {
            out.require(false, name + " has no Q2");
            continue;
        }
        const std::string label = q2->find_option(q2->correct_option_ids().front())->label;
        int line = std::stoi(label.substr(label.find(' ') + 1));
        auto result = testing::oracle::static_dynamic_agreement(ast, flows, line, 4);
        runs += result.runs;
        out.require(result.q2_line_witnessed, name + ": no input raises on line " + std::to_string(line));
        for (const std::string& v : result.violations) {
            out.require(false, name + ": " + v);
        }
        ++checked;
    }
    if (out.passed) {
        out.detail = std::to_string(checked) + " programs, " + std::to_string(runs) + " runs";
    }
    return out;
}

Outcome lifecycle()
{
    Outcome out;
    testing::TempDir dir;
    service::ServiceConfig config;
    config.data_dir = dir.path();
    config.exercises = {testing::rainfall_spec()};
    config.seed_salt = "acceptance";

    auto call = [](service::Service& s, std::string_view method, const std::string& path, const std::string& body) {
        service::HttpResponse r = s.handle(method, path, body);
        return std::make_pair(r.status, r.body.empty() ? json() : json::parse(r.body));
    };
    auto submit = [&](service::Service& s, const std::string& sid, const std::string& source) {
        return call(s, "POST", "/api/exercises/rainfall/submissions",
                    json{{"sessionId", sid}, {"source", source}}.dump());
    };

    service::Store before({});
    {
        service::Service s(config);
        out.require(call(s, "POST", "/api/sessions/a/questionnaire", "").first == 409,
                    "questionnaire opened before any submission");
        for (int i = 0; i < 10; ++i) {
            out.require(submit(s, "a", testing::fixture("mutants/no_try.py")).first == 200,
                        "submission " + std::to_string(i + 1) + " refused");
        }
        out.require(submit(s, "a", testing::f1_source()).first == 409, "11th submission accepted");

        submit(s, "b", testing::f1_source());
        auto opened = call(s, "POST", "/api/sessions/b/questionnaire", "");
        out.require(opened.first == 200, "questionnaire did not open after a submission");
        const std::string qid = opened.second.at("id");
        service::Store state = s.snapshot();
        const gen::Questionnaire& q = state.session("b")->questionnaire->questionnaire;
        json answers{{"answers", assess::answers_to_json(testing::all_correct_answers(q))}};
        auto graded = call(s, "POST", "/api/questionnaires/" + qid + "/answers", answers.dump());
        out.require(graded.first == 200 && graded.second.at("qlcPoints") == 5, "all-correct did not award 5");
        out.require(call(s, "POST", "/api/questionnaires/" + qid + "/answers", answers.dump()).first == 409,
                    "answers accepted twice");

        before = s.snapshot();
        for (const auto& [sid, session] : before.sessions()) {
            out.require(session.total_points() <= 100, sid + " exceeds 100 points");
        }
    }
    {
        std::ofstream torn(dir.path() / "events.jsonl", std::ios::app);
        torn << R"({"seq":99,"kind":"AnswersGraded","payload":{"sessi)";
    }
    service::Service replayed(config);
    out.require(replayed.snapshot() == before, "replay after a crash differs");
    if (out.passed) {
        out.detail = "limit, eligibility, single answer, 5 points, replay";
    }
    return out;
}

} // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {"cles-reproduction", 1, cles_reproduction},
        {"success-rates", 1, success_rates},
        {"bonferroni", 1, bonferroni},
        {"mann-whitney-oracle", 30, mann_whitney_oracle},
        {"functional-suite", 0, functional_suite},
        {"generation-contract", 0, generation_contract},
        {"static-dynamic-agreement", 60, static_dynamic},
        {"lifecycle", 0, lifecycle},
    };
    int failures = 0;
    for (const Criterion& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.check();
        } catch (const std::exception& e) {
            outcome.passed = false;
            outcome.detail = std::string("exception: ") + e.what();
        }
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget_seconds > 0 && seconds >= c.budget_seconds) {
            outcome.passed = false;
            outcome.detail += " (over the " + fmt(c.budget_seconds, 0) + " s budget)";
        }
        failures += outcome.passed ? 0 : 1;
        std::printf("%s %s [%.3f s] %s\n", outcome.passed ? "PASS" : "FAIL", c.name.c_str(), seconds,
                    outcome.detail.c_str());
    }
    return failures == 0 ? 0 : 1;
}
