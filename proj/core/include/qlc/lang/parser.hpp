#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qlc/common/error.hpp"
#include "qlc/lang/ast.hpp"
#include "qlc/lang/token.hpp"

namespace qlc::lang {

class ParseError : public Error {
public:
    ParseError(SourceSpan span, std::string expected, std::string found);

    const SourceSpan& span() const { return span_; }
    const std::string& expected() const { return expected_; }
    const std::string& found() const { return found_; }

private:
    SourceSpan span_;
    std::string expected_;
    std::string found_;
};

// Parses a complete token stream (as produced by tokenize) into a program.
// Stops at the first error.
Ast parse(std::span<const Token> tokens);

// tokenize + parse. Throws LexError or ParseError.
Ast parse_source(std::string_view source);

// Parses `text` as a single expression (optionally followed by a newline).
// Used to re-check node spans against their source text.
Expr parse_expression(std::string_view text);

// Source substring addressed by a span.
std::string span_text(std::string_view source, const SourceSpan& span);

} // namespace qlc::lang
