#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qlc/common/error.hpp"
#include "qlc/lang/token.hpp"

namespace qlc::lang {

class LexError : public Error {
public:
    LexError(SourceSpan span, std::string message);

    const SourceSpan& span() const { return span_; }
    const std::string& detail() const { return detail_; }

private:
    SourceSpan span_;
    std::string detail_;
};

// Reserved words of the accepted language. True/False/None are literal
// constants and lex as identifiers; the parser turns them into literals.
std::span<const std::string_view> reserved_words();
bool is_keyword(std::string_view word);

// Python keywords outside the accepted subset. They lex as identifiers and
// the parser rejects them wherever they appear.
bool is_unsupported_python_keyword(std::string_view word);

// Tab stops count as this many columns when comparing indentation.
inline constexpr int kTabWidth = 8;

std::vector<Token> tokenize(std::string_view source);

// Value of a string-literal lexeme (quotes removed, escapes applied).
std::string decode_string_literal(std::string_view lexeme);

} // namespace qlc::lang
