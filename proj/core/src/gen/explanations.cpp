#include "qlc/gen/explanations.hpp"

#include <algorithm>

namespace qlc::gen {

using namespace qlc::analysis;

namespace {

int parse_line_label(const std::string& label)
{
    // "line N"
    return std::stoi(label.substr(label.find(' ') + 1));
}

std::string variable_text(const std::string& name, const IdentifierTable& table)
{
    auto it = std::find_if(table.variables.begin(), table.variables.end(),
                           [&](const Variable& v) { return v.name == name; });
    if (it == table.variables.end()) {
        return name + " is a variable in your program.";
    }
    int line = it->definition_sites.front().start_line;
    std::string where = " on line " + std::to_string(line) + ".";
    switch (it->kind) {
    case VariableKind::Parameter:
        return name + " is a variable: it is a parameter of the function defined" + where;
    case VariableKind::ForTarget:
        return name + " is a variable: the for loop" + where.substr(0, where.size() - 1) +
               " assigns each item to it.";
    case VariableKind::ExceptBinding:
        return name + " is a variable: the except clause" + where.substr(0, where.size() - 1) +
               " binds the caught error to it.";
    case VariableKind::Assigned: break;
    }
    return name + " is a variable: your program assigns a value to it" + where;
}

std::string reason_text(RaiseReason reason)
{
    switch (reason) {
    case RaiseReason::ConversionCall:
        return "converts text to a number, which raises ValueError when the text is not a valid number";
    case RaiseReason::DivisionOp: return "divides, which raises ZeroDivisionError when the divisor is zero";
    case RaiseReason::InputCall: return "reads input, which raises EOFError when no input is left";
    }
    return "can raise an error";
}

std::string purpose_meaning(Purpose p)
{
    switch (p) {
    case Purpose::AcceptsNewData: return "reads a new value from the user with input()";
    case Purpose::GuardsDivisionByZero:
        return "checks a value before it is used as a divisor, so the division never runs with zero";
    case Purpose::SentinelTermination:
        return "compares the input with the stop value and ends the loop or function when it matches";
    case Purpose::IgnoresNegativeInput:
        return "skips negative numbers so that they are not added to the result";
    }
    return "";
}

} // namespace

ExplanationContext make_context(const lang::Ast& ast, const PurposeOptions& options)
{
    return ExplanationContext{classify_identifiers(ast), except_sources(ast), classify_purposes(ast, options)};
}

std::string explanation_for(const AnswerOption& option, const Qlc& question, const ExplanationContext& context)
{
    const std::string& label = option.label;
    switch (option.category) {
    case OptionCategory::Variable: return variable_text(label, context.table);
    case OptionCategory::BuiltinUsed:
        return label + " is a built-in function, not a variable defined in your program.";
    case OptionCategory::ReservedWord:
        return label + " is a reserved word of the language. It is part of the syntax and cannot be a variable name.";
    case OptionCategory::UnusedWord: return label + " does not appear in your program at all.";
    case OptionCategory::TryLine:
        return "This line starts the try block; execution enters the except block from the line that raises "
               "the error.";
    case OptionCategory::RaisingLine:
    case OptionCategory::OutsideBeforeTry: {
        int line = parse_line_label(label);
        int handler = question.target_line.value_or(0);
        const ExceptFlow* flow = nullptr;
        for (const ExceptFlow& f : context.flows) {
            if (f.handler_line == handler) {
                flow = &f;
                break;
            }
        }
        if (option.category == OptionCategory::OutsideBeforeTry) {
            std::string text = "Line " + std::to_string(line) + " is outside and before the try block";
            if (flow != nullptr) {
                text += " that starts on line " + std::to_string(flow->try_line);
            }
            return text + ". Errors raised there are not handled by the except block on line " +
                   std::to_string(handler) + ".";
        }
        std::string text = "Line " + std::to_string(line) + " is inside the try block and ";
        std::string reason = "can raise an error";
        if (flow != nullptr) {
            auto site = std::find_if(flow->raising_sites.begin(), flow->raising_sites.end(),
                                     [&](const RaisingSite& s) { return s.line == line; });
            if (site != flow->raising_sites.end()) {
                reason = reason_text(site->reason);
            }
        }
        text += reason;
        return text + ". When that happens, execution jumps to the except block on line " +
               std::to_string(handler) + ".";
    }
    case OptionCategory::PurposeLabel: {
        std::string line = std::to_string(question.target_line.value_or(0));
        Purpose actual = question.purpose.value_or(Purpose::AcceptsNewData);
        if (option.is_correct) {
            return "Correct: line " + line + " " + purpose_meaning(actual) + ".";
        }
        std::optional<Purpose> described;
        for (Purpose p : kAllPurposes) {
            if (purpose_label(p) == label) {
                described = p;
            }
        }
        std::string text = "A line with this purpose ";
        text += described ? purpose_meaning(*described) : std::string("does something else");
        return text + ". Line " + line + " instead " + purpose_meaning(actual) + ".";
    }
    }
    return label;
}

std::string explanation_for(const AnswerOption& option, const Qlc& question, const lang::Ast& ast)
{
    return explanation_for(option, question, make_context(ast));
}

} // namespace qlc::gen
