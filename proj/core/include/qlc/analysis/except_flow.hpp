#pragma once

#include <string>
#include <vector>

#include "qlc/lang/ast.hpp"

namespace qlc::analysis {

enum class RaiseReason { ConversionCall, DivisionOp, InputCall };

std::string_view to_string(RaiseReason reason);

struct RaisingSite {
    int line = 0;
    std::string exception_name;
    RaiseReason reason = RaiseReason::ConversionCall;
    // The call or operator expression (the whole statement for `/=`).
    lang::SourceSpan span;
    bool operator==(const RaisingSite&) const = default;
};

// One handler of one try statement, with the sites in the try body whose
// exception reaches that handler.
struct ExceptFlow {
    int try_line = 0;
    int handler_line = 0;
    std::vector<std::string> caught;
    std::vector<RaisingSite> raising_sites;
    lang::SourceSpan try_span;
    lang::SourceSpan body_span;
    bool operator==(const ExceptFlow&) const = default;
};

// One flow per handler, in source order. Sites are ordered by position.
// A site counts for a handler if its exception is not already caught by a
// nested try and is not caught by an earlier handler of the same try.
std::vector<ExceptFlow> except_sources(const lang::Ast& ast);

// The raising sites of a single expression, ignoring handlers.
std::vector<RaisingSite> raising_sites_in(const lang::Expr& expr);

} // namespace qlc::analysis
