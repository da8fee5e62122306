#pragma once

#include <string>
#include <vector>

#include "qlc/gen/questionnaire.hpp"

namespace qlc::gen {

// What the explanation templates need to know about the program.
struct ExplanationContext {
    analysis::IdentifierTable table;
    std::vector<analysis::ExceptFlow> flows;
    std::vector<analysis::PurposeFinding> purposes;
};

ExplanationContext make_context(const lang::Ast& ast, const analysis::PurposeOptions& options = {});

// Text shown for an option after the questionnaire is answered.
std::string explanation_for(const AnswerOption& option, const Qlc& question,
                            const ExplanationContext& context);
std::string explanation_for(const AnswerOption& option, const Qlc& question, const lang::Ast& ast);

} // namespace qlc::gen
