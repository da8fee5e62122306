#include "qlc/assess/grading.hpp"

#include <algorithm>

#include "qlc/lang/ast_json.hpp"

namespace qlc::assess {

using nlohmann::json;
using namespace qlc::gen;

namespace {

constexpr ErrorCategory kErrorCategories[] = {
    ErrorCategory::MissedVariable, ErrorCategory::SelectedBuiltin,    ErrorCategory::SelectedReserved,
    ErrorCategory::SelectedUnused, ErrorCategory::ChoseTryLine,       ErrorCategory::ChoseOutsideBefore,
    ErrorCategory::WrongPurposeLabel,
};

std::optional<ErrorCategory> category_for_selection(OptionCategory c)
{
    switch (c) {
    case OptionCategory::BuiltinUsed: return ErrorCategory::SelectedBuiltin;
    case OptionCategory::ReservedWord: return ErrorCategory::SelectedReserved;
    case OptionCategory::UnusedWord: return ErrorCategory::SelectedUnused;
    case OptionCategory::TryLine: return ErrorCategory::ChoseTryLine;
    case OptionCategory::OutsideBeforeTry: return ErrorCategory::ChoseOutsideBefore;
    case OptionCategory::PurposeLabel: return ErrorCategory::WrongPurposeLabel;
    default: return std::nullopt;
    }
}

} // namespace

std::string_view to_string(ErrorCategory category)
{
    switch (category) {
    case ErrorCategory::MissedVariable: return "missedVariable";
    case ErrorCategory::SelectedBuiltin: return "selectedBuiltin";
    case ErrorCategory::SelectedReserved: return "selectedReserved";
    case ErrorCategory::SelectedUnused: return "selectedUnused";
    case ErrorCategory::ChoseTryLine: return "choseTryLine";
    case ErrorCategory::ChoseOutsideBefore: return "choseOutsideBefore";
    case ErrorCategory::WrongPurposeLabel: return "wrongPurposeLabel";
    }
    return "?";
}

std::optional<ErrorCategory> error_category_from_string(std::string_view text)
{
    for (ErrorCategory c : kErrorCategories) {
        if (to_string(c) == text) {
            return c;
        }
    }
    return std::nullopt;
}

std::string_view to_string(AssessmentError::Code code)
{
    using Code = AssessmentError::Code;
    switch (code) {
    case Code::LimitExceeded: return "LimitExceeded";
    case Code::NotEligible: return "NotEligible";
    case Code::AlreadyOpened: return "AlreadyOpened";
    case Code::NotOpened: return "NotOpened";
    case Code::AlreadyAnswered: return "AlreadyAnswered";
    case Code::MissingAnswer: return "MissingAnswer";
    case Code::UnknownOption: return "UnknownOption";
    case Code::UnknownQuestion: return "UnknownQuestion";
    case Code::InvalidSelection: return "InvalidSelection";
    }
    return "?";
}

GradeReport grade_answers(const Questionnaire& questionnaire, const Answers& answers, int qlc_points_max)
{
    using Code = AssessmentError::Code;
    for (const auto& [qid, selected] : answers) {
        if (questionnaire.find_question(qid) == nullptr) {
            throw AssessmentError(Code::UnknownQuestion, "no question with id '" + qid + "'");
        }
    }

    GradeReport report;
    report.questionnaire_id = questionnaire.id;
    bool all_correct = true;
    for (const Qlc& q : questionnaire.questions) {
        auto it = answers.find(q.id);
        if (it == answers.end() || it->second.empty()) {
            throw AssessmentError(Code::MissingAnswer, "question '" + q.id + "' has no answer");
        }
        const std::vector<std::string>& selected = it->second;
        std::set<std::string> distinct(selected.begin(), selected.end());
        if (distinct.size() != selected.size()) {
            throw AssessmentError(Code::InvalidSelection, "question '" + q.id + "' selects an option twice");
        }
        if (!q.multi_select && selected.size() != 1) {
            throw AssessmentError(Code::InvalidSelection, "question '" + q.id + "' takes exactly one option");
        }
        for (const std::string& oid : selected) {
            if (q.find_option(oid) == nullptr) {
                throw AssessmentError(Code::UnknownOption,
                                      "question '" + q.id + "' has no option with id '" + oid + "'");
            }
        }

        QuestionGrade grade;
        grade.question_id = q.id;
        grade.type = q.type;
        grade.selected_option_ids = selected;
        grade.correct_option_ids = q.correct_option_ids();
        grade.variant = q.purpose;
        for (const AnswerOption& o : q.options) {
            bool chosen = distinct.count(o.id) > 0;
            if (o.is_correct && !chosen) {
                grade.error_categories.insert(ErrorCategory::MissedVariable);
            }
            if (!o.is_correct && chosen) {
                if (auto c = category_for_selection(o.category)) {
                    grade.error_categories.insert(*c);
                }
            }
        }
        if (q.type != QlcType::VariableNames) {
            // A single-choice question that misses the right option is
            // described by the option chosen, not by what was missed.
            grade.error_categories.erase(ErrorCategory::MissedVariable);
        }
        std::set<std::string> correct(grade.correct_option_ids.begin(), grade.correct_option_ids.end());
        grade.correct = correct == distinct;
        all_correct = all_correct && grade.correct;
        report.per_question.push_back(std::move(grade));

        for (const AnswerOption& o : q.options) {
            report.explanations[o.id] = o.explanation;
        }
    }
    report.qlc_points = all_correct ? qlc_points_max : 0;
    return report;
}

Answers answers_from_json(const json& j)
{
    const json* body = &j;
    if (j.is_object() && j.contains("answers")) {
        body = &j.at("answers");
    }
    if (!body->is_object()) {
        throw AssessmentError(AssessmentError::Code::InvalidSelection,
                              "answers must be an object mapping question ids to option ids");
    }
    Answers out;
    for (const auto& [qid, value] : body->items()) {
        std::vector<std::string> ids;
        if (value.is_string()) {
            ids.push_back(value.get<std::string>());
        } else if (value.is_array()) {
            for (const json& v : value) {
                if (!v.is_string()) {
                    throw AssessmentError(AssessmentError::Code::InvalidSelection,
                                          "option ids must be strings");
                }
                ids.push_back(v.get<std::string>());
            }
        } else {
            throw AssessmentError(AssessmentError::Code::InvalidSelection,
                                  "answer for '" + qid + "' must be an option id or a list of them");
        }
        out[qid] = std::move(ids);
    }
    return out;
}

json answers_to_json(const Answers& answers)
{
    json out = json::object();
    for (const auto& [qid, ids] : answers) {
        out[qid] = ids;
    }
    return out;
}

json grade_report_to_json(const GradeReport& report, const Questionnaire& questionnaire)
{
    json per_question = json::array();
    for (const QuestionGrade& g : report.per_question) {
        json categories = json::array();
        for (ErrorCategory c : g.error_categories) {
            categories.push_back(to_string(c));
        }
        json options = json::array();
        if (const Qlc* q = questionnaire.find_question(g.question_id)) {
            for (const AnswerOption& o : q->options) {
                bool chosen = std::find(g.selected_option_ids.begin(), g.selected_option_ids.end(), o.id) !=
                              g.selected_option_ids.end();
                options.push_back(json{{"id", o.id},
                                       {"label", o.label},
                                       {"isCorrect", o.is_correct},
                                       {"category", to_string(o.category)},
                                       {"selected", chosen},
                                       {"explanation", o.explanation}});
            }
        }
        json entry{{"questionId", g.question_id},
                   {"qlcType", gen::to_string(g.type)},
                   {"correct", g.correct},
                   {"selectedOptionIds", g.selected_option_ids},
                   {"correctOptionIds", g.correct_option_ids},
                   {"errorCategories", std::move(categories)},
                   {"options", std::move(options)}};
        entry["variant"] = g.variant ? json(analysis::to_string(*g.variant)) : json(nullptr);
        per_question.push_back(std::move(entry));
    }
    return json{{"questionnaireId", report.questionnaire_id},
                {"qlcPoints", report.qlc_points},
                {"perQuestion", std::move(per_question)},
                {"explanations", report.explanations}};
}

GradeReport grade_report_from_json(const json& j)
{
    try {
        GradeReport report;
        report.questionnaire_id = j.at("questionnaireId").get<std::string>();
        report.qlc_points = j.at("qlcPoints").get<int>();
        report.explanations = j.at("explanations").get<std::map<std::string, std::string>>();
        for (const json& jg : j.at("perQuestion")) {
            QuestionGrade g;
            g.question_id = jg.at("questionId").get<std::string>();
            auto type = qlc_type_from_string(jg.at("qlcType").get<std::string>());
            if (!type) {
                throw lang::SchemaError("grade report: unknown question type");
            }
            g.type = *type;
            g.correct = jg.at("correct").get<bool>();
            g.selected_option_ids = jg.at("selectedOptionIds").get<std::vector<std::string>>();
            g.correct_option_ids = jg.at("correctOptionIds").get<std::vector<std::string>>();
            for (const json& c : jg.at("errorCategories")) {
                auto category = error_category_from_string(c.get<std::string>());
                if (!category) {
                    throw lang::SchemaError("grade report: unknown error category");
                }
                g.error_categories.insert(*category);
            }
            if (jg.contains("variant") && !jg.at("variant").is_null()) {
                g.variant = analysis::purpose_from_string(jg.at("variant").get<std::string>());
            }
            report.per_question.push_back(std::move(g));
        }
        return report;
    } catch (const json::exception& e) {
        throw lang::SchemaError(std::string("grade report: ") + e.what());
    }
}

} // namespace qlc::assess
