#include <doctest.h>

#include "qlc/assess/grading.hpp"
#include "qlc/gen/generator.hpp"
#include "qlc/lang/parser.hpp"
#include "test_support.hpp"

using namespace qlc;
using namespace qlc::assess;
using gen::OptionCategory;
using gen::QlcType;

namespace {

gen::Questionnaire f1_questionnaire()
{
    const std::string& source = testing::f1_source();
    return gen::generate_for_source(lang::parse_source(source), source, 7);
}

std::string option_with(const gen::Qlc& q, OptionCategory category)
{
    for (const gen::AnswerOption& o : q.options) {
        if (o.category == category) {
            return o.id;
        }
    }
    throw std::runtime_error("no option of that category");
}

std::string wrong_option(const gen::Qlc& q)
{
    for (const gen::AnswerOption& o : q.options) {
        if (!o.is_correct) {
            return o.id;
        }
    }
    throw std::runtime_error("no wrong option");
}

AssessmentError::Code code_of(const gen::Questionnaire& q, const Answers& answers)
{
    try {
        grade_answers(q, answers, 5);
    } catch (const AssessmentError& e) {
        return e.code();
    }
    FAIL("expected an AssessmentError");
    return AssessmentError::Code::MissingAnswer;
}

} // namespace

TEST_CASE("all correct earns the questionnaire points")
{
    gen::Questionnaire q = f1_questionnaire();
    GradeReport report = grade_answers(q, testing::all_correct_answers(q), 5);
    CHECK(report.qlc_points == 5);
    CHECK(report.questionnaire_id == q.id);
    REQUIRE(report.per_question.size() == 3);
    for (const QuestionGrade& g : report.per_question) {
        CHECK(g.correct);
        CHECK(g.error_categories.empty());
    }
    CHECK(report.per_question[2].variant == q.questions[2].purpose);
    std::size_t option_count = 0;
    for (const gen::Qlc& question : q.questions) {
        option_count += question.options.size();
    }
    CHECK(report.explanations.size() == option_count);
}

TEST_CASE("one mistake loses all questionnaire points")
{
    gen::Questionnaire q = f1_questionnaire();
    Answers answers = testing::all_correct_answers(q);
    answers["q3"] = {wrong_option(q.questions[2])};
    GradeReport report = grade_answers(q, answers, 5);
    CHECK(report.qlc_points == 0);
    CHECK(report.per_question[0].correct);
    CHECK_FALSE(report.per_question[2].correct);
    CHECK(report.per_question[2].error_categories == std::set<ErrorCategory>{ErrorCategory::WrongPurposeLabel});
}

TEST_CASE("variable question categories")
{
    gen::Questionnaire q = f1_questionnaire();
    const gen::Qlc& q1 = q.questions[0];
    Answers answers = testing::all_correct_answers(q);

    answers["q1"] = {q1.correct_option_ids().front()};
    CHECK(grade_answers(q, answers, 5).per_question[0].error_categories ==
          std::set<ErrorCategory>{ErrorCategory::MissedVariable});

    answers["q1"] = q1.correct_option_ids();
    answers["q1"].push_back(option_with(q1, OptionCategory::BuiltinUsed));
    answers["q1"].push_back(option_with(q1, OptionCategory::ReservedWord));
    GradeReport report = grade_answers(q, answers, 5);
    CHECK_FALSE(report.per_question[0].correct);
    CHECK(report.per_question[0].error_categories ==
          std::set<ErrorCategory>{ErrorCategory::SelectedBuiltin, ErrorCategory::SelectedReserved});
}

TEST_CASE("except question categories")
{
    gen::Questionnaire q = f1_questionnaire();
    Answers answers = testing::all_correct_answers(q);
    answers["q2"] = {option_with(q.questions[1], OptionCategory::TryLine)};
    CHECK(grade_answers(q, answers, 5).per_question[1].error_categories ==
          std::set<ErrorCategory>{ErrorCategory::ChoseTryLine});
    answers["q2"] = {option_with(q.questions[1], OptionCategory::OutsideBeforeTry)};
    CHECK(grade_answers(q, answers, 5).per_question[1].error_categories ==
          std::set<ErrorCategory>{ErrorCategory::ChoseOutsideBefore});
}

TEST_CASE("unused words")
{
    std::string source = "x = 1\nprint(x)\nx = input()\n";
    gen::Questionnaire q = gen::generate_for_source(lang::parse_source(source), source, 3);
    const gen::Qlc* q1 = q.find_question(QlcType::VariableNames);
    REQUIRE(q1 != nullptr);
    Answers answers = testing::all_correct_answers(q);
    answers[q1->id].push_back(option_with(*q1, OptionCategory::UnusedWord));
    CHECK(grade_answers(q, answers, 5).per_question[0].error_categories.count(ErrorCategory::SelectedUnused) == 1);
}

TEST_CASE("invalid answers")
{
    gen::Questionnaire q = f1_questionnaire();
    Answers good = testing::all_correct_answers(q);

    Answers missing = good;
    missing.erase("q2");
    CHECK(code_of(q, missing) == AssessmentError::Code::MissingAnswer);

    Answers empty_multi = good;
    empty_multi["q1"] = {};
    CHECK(code_of(q, empty_multi) == AssessmentError::Code::MissingAnswer);

    Answers extra = good;
    extra["q9"] = {"q9.1"};
    CHECK(code_of(q, extra) == AssessmentError::Code::UnknownQuestion);

    Answers unknown_option = good;
    unknown_option["q2"] = {"q2.99"};
    CHECK(code_of(q, unknown_option) == AssessmentError::Code::UnknownOption);

    Answers two_for_single = good;
    two_for_single["q3"] = {q.questions[2].options[0].id, q.questions[2].options[1].id};
    CHECK(code_of(q, two_for_single) == AssessmentError::Code::InvalidSelection);

    Answers duplicated = good;
    duplicated["q1"].push_back(duplicated["q1"].front());
    CHECK(code_of(q, duplicated) == AssessmentError::Code::InvalidSelection);
}

TEST_CASE("answers JSON")
{
    Answers a = answers_from_json(nlohmann::json::parse(R"({"q1": ["q1.1", "q1.3"], "q2": "q2.1"})"));
    CHECK(a.at("q1") == std::vector<std::string>{"q1.1", "q1.3"});
    CHECK(a.at("q2") == std::vector<std::string>{"q2.1"});
    CHECK(answers_from_json(nlohmann::json{{"answers", answers_to_json(a)}}) == a);
    CHECK_THROWS_AS(answers_from_json(nlohmann::json::parse(R"({"q1": 3})")), AssessmentError);
    CHECK_THROWS_AS(answers_from_json(nlohmann::json::parse(R"([1])")), AssessmentError);
}

TEST_CASE("grade report JSON")
{
    gen::Questionnaire q = f1_questionnaire();
    Answers answers = testing::all_correct_answers(q);
    answers["q2"] = {option_with(q.questions[1], OptionCategory::TryLine)};
    GradeReport report = grade_answers(q, answers, 5);
    nlohmann::json j = grade_report_to_json(report, q);
    CHECK(grade_report_from_json(j) == report);
    CHECK(j.dump().find("choseTryLine") != std::string::npos);
    CHECK(j.dump().find("isCorrect") != std::string::npos);
}

TEST_CASE("category names round trip")
{
    for (ErrorCategory c : {ErrorCategory::MissedVariable, ErrorCategory::SelectedBuiltin,
                            ErrorCategory::SelectedReserved, ErrorCategory::SelectedUnused,
                            ErrorCategory::ChoseTryLine, ErrorCategory::ChoseOutsideBefore,
                            ErrorCategory::WrongPurposeLabel}) {
        CHECK(error_category_from_string(to_string(c)) == c);
    }
}
