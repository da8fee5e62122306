#include "qlc/gen/questionnaire.hpp"

#include <algorithm>

namespace qlc::gen {

namespace {

constexpr QlcType kTypes[] = {QlcType::VariableNames, QlcType::ExceptSource, QlcType::LinePurpose};

constexpr OptionCategory kCategories[] = {
    OptionCategory::Variable,    OptionCategory::BuiltinUsed, OptionCategory::ReservedWord,
    OptionCategory::UnusedWord,  OptionCategory::RaisingLine, OptionCategory::TryLine,
    OptionCategory::OutsideBeforeTry, OptionCategory::PurposeLabel,
};

} // namespace

std::string_view to_string(QlcType type)
{
    switch (type) {
    case QlcType::VariableNames: return "Q1_VariableNames";
    case QlcType::ExceptSource: return "Q2_ExceptSource";
    case QlcType::LinePurpose: return "Q3_LinePurpose";
    }
    return "?";
}

std::optional<QlcType> qlc_type_from_string(std::string_view text)
{
    for (QlcType t : kTypes) {
        if (to_string(t) == text) {
            return t;
        }
    }
    return std::nullopt;
}

std::string_view short_name(QlcType type)
{
    switch (type) {
    case QlcType::VariableNames: return "Q1";
    case QlcType::ExceptSource: return "Q2";
    case QlcType::LinePurpose: return "Q3";
    }
    return "?";
}

std::optional<QlcType> qlc_type_from_short_name(std::string_view text)
{
    for (QlcType t : kTypes) {
        if (short_name(t) == text || to_string(t) == text) {
            return t;
        }
    }
    return std::nullopt;
}

std::string_view block_model_tag(QlcType type)
{
    switch (type) {
    case QlcType::VariableNames: return "atom–text";
    case QlcType::ExceptSource: return "relations–execution";
    case QlcType::LinePurpose: return "atom–purpose";
    }
    return "?";
}

std::string_view to_string(OptionCategory category)
{
    switch (category) {
    case OptionCategory::Variable: return "variable";
    case OptionCategory::BuiltinUsed: return "builtinUsed";
    case OptionCategory::ReservedWord: return "reservedWord";
    case OptionCategory::UnusedWord: return "unusedWord";
    case OptionCategory::RaisingLine: return "raisingLine";
    case OptionCategory::TryLine: return "tryLine";
    case OptionCategory::OutsideBeforeTry: return "outsideBeforeTry";
    case OptionCategory::PurposeLabel: return "purposeLabel";
    }
    return "?";
}

std::optional<OptionCategory> option_category_from_string(std::string_view text)
{
    for (OptionCategory c : kCategories) {
        if (to_string(c) == text) {
            return c;
        }
    }
    return std::nullopt;
}

const AnswerOption* Qlc::find_option(std::string_view option_id) const
{
    auto it = std::find_if(options.begin(), options.end(),
                           [&](const AnswerOption& o) { return o.id == option_id; });
    return it == options.end() ? nullptr : &*it;
}

std::vector<std::string> Qlc::correct_option_ids() const
{
    std::vector<std::string> out;
    for (const AnswerOption& o : options) {
        if (o.is_correct) {
            out.push_back(o.id);
        }
    }
    return out;
}

const Qlc* Questionnaire::find_question(std::string_view question_id) const
{
    auto it = std::find_if(questions.begin(), questions.end(),
                           [&](const Qlc& q) { return q.id == question_id; });
    return it == questions.end() ? nullptr : &*it;
}

const Qlc* Questionnaire::find_question(QlcType type) const
{
    auto it = std::find_if(questions.begin(), questions.end(),
                           [&](const Qlc& q) { return q.type == type; });
    return it == questions.end() ? nullptr : &*it;
}

std::string render_prompt(QlcType type, std::optional<int> target_line)
{
    std::string x = target_line ? std::to_string(*target_line) : "X";
    switch (type) {
    case QlcType::VariableNames: return "Which of the following are variable names in the program?";
    case QlcType::ExceptSource: return "From which line can program execution jump to line " + x + "?";
    case QlcType::LinePurpose:
        return "Which of the following best describes the purpose of line " + x + "?";
    }
    return {};
}

} // namespace qlc::gen
