#pragma once

#include <string>
#include <string_view>

#include "qlc/lang/span.hpp"

namespace qlc::lang {

enum class TokenKind {
    Keyword,
    Identifier,
    IntLiteral,
    FloatLiteral,
    StringLiteral,
    Operator,
    Delimiter,
    Newline,
    Indent,
    Dedent,
    EndOfFile,
};

std::string_view to_string(TokenKind kind);

// `text` holds the exact lexeme. String literals keep their quotes; use
// decode_string_literal() for the value.
struct Token {
    TokenKind kind = TokenKind::EndOfFile;
    std::string text;
    SourceSpan span;

    bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
    bool is_keyword(std::string_view t) const { return is(TokenKind::Keyword, t); }
    bool operator==(const Token&) const = default;
};

} // namespace qlc::lang
