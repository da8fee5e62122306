#pragma once

#include <set>
#include <string>
#include <vector>

#include "qlc/lang/ast.hpp"

namespace qlc::analysis {

enum class VariableKind { Assigned, Parameter, ForTarget, ExceptBinding };

std::string_view to_string(VariableKind kind);

struct Variable {
    std::string name;
    // Kind of the first definition in source order.
    VariableKind kind = VariableKind::Assigned;
    std::vector<lang::SourceSpan> definition_sites;
};

// A builtin, keyword or function name with the places it occurs. For
// keywords the site is the span of the construct that uses the keyword.
struct NameUse {
    std::string name;
    std::vector<lang::SourceSpan> sites;
};

// The four lists are pairwise disjoint by name and sorted by name.
struct IdentifierTable {
    std::vector<Variable> variables;
    std::vector<NameUse> builtins_used;
    std::vector<NameUse> keywords_used;
    std::vector<NameUse> functions_defined;

    bool is_variable(std::string_view name) const;
    std::vector<std::string> variable_names() const;
    std::vector<std::string> builtin_names() const;
    std::vector<std::string> keyword_names() const;
};

IdentifierTable classify_identifiers(const lang::Ast& ast);

// Every identifier text the program mentions: names, parameters, function
// names, exception names and bindings in handlers.
std::set<std::string> names_in_program(const lang::Ast& ast);

} // namespace qlc::analysis
