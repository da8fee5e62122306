#include "qlc/lang/lexer.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <vector>

namespace qlc::lang {

namespace {

constexpr std::array<std::string_view, 17> kReserved{
    "def", "return", "if",       "elif", "else", "while", "for", "in",  "try",
    "except", "as",  "break", "continue", "pass", "and",  "or",  "not",
};

constexpr std::array<std::string_view, 15> kUnsupported{
    "class", "import", "from",    "lambda", "global", "nonlocal", "del",   "with",
    "yield", "is",     "raise",   "assert", "finally", "async",   "await",
};

// Longest match first.
constexpr std::array<std::string_view, 18> kMultiCharOperators{
    "//=", "**=", ">>=", "<<=", "==", "!=", "<=", ">=", "+=",
    "-=",  "*=",  "/=",  "%=",  "//", "**", "->", "<<", ">>",
};

constexpr std::string_view kSingleCharOperators = "+-*/%=<>&|^~@";
constexpr std::string_view kDelimiters = "()[]{},:.;";

bool is_ident_start(char c)
{
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

bool is_ident_char(char c)
{
    return is_ident_start(c) || (c >= '0' && c <= '9');
}

bool is_digit(char c)
{
    return c >= '0' && c <= '9';
}

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run()
    {
        while (pos_ < src_.size()) {
            lex_line();
        }
        if (!brackets_.empty()) {
            const Token& open = brackets_.back();
            throw LexError(open.span, "'" + open.text + "' was never closed");
        }
        // Source without a trailing newline still ends its last logical line.
        if (line_has_tokens_) {
            push(TokenKind::Newline, "", point_span());
            line_has_tokens_ = false;
        }
        while (indents_.size() > 1) {
            indents_.pop_back();
            push(TokenKind::Dedent, "", point_span());
        }
        push(TokenKind::EndOfFile, "", point_span());
        return std::move(tokens_);
    }

private:
    // One physical line, including its terminating '\n' if present.
    void lex_line()
    {
        line_start_ = pos_;
        if (brackets_.empty() && !handle_indentation()) {
            skip_to_next_line();
            return;
        }
        while (pos_ < src_.size() && src_[pos_] != '\n') {
            char c = src_[pos_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\f') {
                ++pos_;
            } else if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') {
                    ++pos_;
                }
            } else if (is_ident_start(c)) {
                lex_word();
            } else if (is_digit(c) || (c == '.' && pos_ + 1 < src_.size() && is_digit(src_[pos_ + 1]))) {
                lex_number();
            } else if (c == '"' || c == '\'') {
                lex_string();
            } else {
                lex_punctuation();
            }
        }
        if (brackets_.empty() && line_has_tokens_) {
            SourceSpan nl{line_, col_of(pos_), line_, col_of(pos_) + 1};
            push(TokenKind::Newline, pos_ < src_.size() ? "\n" : "", nl);
            line_has_tokens_ = false;
        }
        skip_to_next_line();
    }

    void skip_to_next_line()
    {
        while (pos_ < src_.size() && src_[pos_] != '\n') {
            ++pos_;
        }
        if (pos_ < src_.size()) {
            ++pos_;
            ++line_;
        }
    }

    // Returns false for blank and comment-only lines, which produce no tokens.
    bool handle_indentation()
    {
        int width = 0;
        bool saw_space = false;
        bool saw_tab = false;
        std::size_t p = pos_;
        while (p < src_.size() && (src_[p] == ' ' || src_[p] == '\t' || src_[p] == '\f')) {
            if (src_[p] == ' ') {
                saw_space = true;
                ++width;
            } else if (src_[p] == '\t') {
                saw_tab = true;
                width += kTabWidth;
            }
            ++p;
        }
        if (p >= src_.size() || src_[p] == '\n' || src_[p] == '#' ||
            (src_[p] == '\r' && (p + 1 >= src_.size() || src_[p + 1] == '\n'))) {
            return false;
        }
        if (saw_space && saw_tab) {
            throw LexError({line_, 1, line_, col_of(p)},
                           "indentation mixes tabs and spaces");
        }
        pos_ = p;
        if (width > indents_.back()) {
            indents_.push_back(width);
            push(TokenKind::Indent, std::string(src_.substr(line_start_, p - line_start_)),
                 {line_, 1, line_, col_of(p)});
        } else {
            SourceSpan at{line_, col_of(p), line_, col_of(p) + 1};
            while (width < indents_.back()) {
                indents_.pop_back();
                push(TokenKind::Dedent, "", at);
            }
            if (width != indents_.back()) {
                throw LexError(at, "unindent does not match any outer indentation level");
            }
        }
        return true;
    }

    void lex_word()
    {
        std::size_t start = pos_;
        while (pos_ < src_.size() && is_ident_char(src_[pos_])) {
            ++pos_;
        }
        std::string word(src_.substr(start, pos_ - start));
        TokenKind kind = is_keyword(word) ? TokenKind::Keyword : TokenKind::Identifier;
        emit(kind, std::move(word), start);
    }

    void lex_number()
    {
        std::size_t start = pos_;
        bool is_float = false;
        while (pos_ < src_.size() && is_digit(src_[pos_])) {
            ++pos_;
        }
        if (pos_ < src_.size() && src_[pos_] == '.') {
            is_float = true;
            ++pos_;
            while (pos_ < src_.size() && is_digit(src_[pos_])) {
                ++pos_;
            }
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t p = pos_ + 1;
            if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) {
                ++p;
            }
            if (p < src_.size() && is_digit(src_[p])) {
                is_float = true;
                pos_ = p;
                while (pos_ < src_.size() && is_digit(src_[pos_])) {
                    ++pos_;
                }
            }
        }
        std::string_view text = src_.substr(start, pos_ - start);
        SourceSpan span{line_, col_of(start), line_, col_of(pos_)};
        if (pos_ < src_.size() && is_ident_char(src_[pos_])) {
            throw LexError(span, "invalid decimal literal");
        }
        if (is_float) {
            if (!std::isfinite(std::strtod(std::string(text).c_str(), nullptr))) {
                throw LexError(span, "float literal is out of range");
            }
            emit(TokenKind::FloatLiteral, std::string(text), start);
            return;
        }
        if (text.size() > 1 && text[0] == '0' &&
            text.find_first_not_of('0') != std::string_view::npos) {
            throw LexError(span, "leading zeros in decimal integer literals are not permitted");
        }
        std::int64_t value = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc{} || ptr != text.data() + text.size()) {
            throw LexError(span, "integer literal is too large");
        }
        emit(TokenKind::IntLiteral, std::string(text), start);
    }

    void lex_string()
    {
        std::size_t start = pos_;
        char quote = src_[pos_++];
        while (true) {
            if (pos_ >= src_.size() || src_[pos_] == '\n') {
                throw LexError({line_, col_of(start), line_, col_of(pos_) + 1},
                               "unterminated string literal");
            }
            char c = src_[pos_];
            if (c == quote) {
                ++pos_;
                break;
            }
            if (c == '\\') {
                char next = pos_ + 1 < src_.size() ? src_[pos_ + 1] : '\0';
                if (next != 'n' && next != 't' && next != '\\' && next != '\'' && next != '"') {
                    throw LexError({line_, col_of(pos_), line_, col_of(pos_) + 2},
                                   "unsupported escape sequence in string literal");
                }
                pos_ += 2;
                continue;
            }
            ++pos_;
        }
        emit(TokenKind::StringLiteral, std::string(src_.substr(start, pos_ - start)), start);
    }

    void lex_punctuation()
    {
        std::size_t start = pos_;
        std::string_view rest = src_.substr(pos_);
        for (std::string_view op : kMultiCharOperators) {
            if (rest.starts_with(op)) {
                pos_ += op.size();
                emit(TokenKind::Operator, std::string(op), start);
                return;
            }
        }
        char c = src_[pos_];
        if (kSingleCharOperators.find(c) != std::string_view::npos) {
            ++pos_;
            emit(TokenKind::Operator, std::string(1, c), start);
            return;
        }
        if (kDelimiters.find(c) != std::string_view::npos) {
            ++pos_;
            emit(TokenKind::Delimiter, std::string(1, c), start);
            track_bracket(tokens_.back());
            return;
        }
        SourceSpan span{line_, col_of(pos_), line_, col_of(pos_) + 1};
        if (c == '\\') {
            throw LexError(span, "line continuation with '\\' is not supported");
        }
        throw LexError(span, "illegal character in source");
    }

    void track_bracket(const Token& tok)
    {
        const char c = tok.text[0];
        if (c == '(' || c == '[' || c == '{') {
            brackets_.push_back(tok);
        } else if (c == ')' || c == ']' || c == '}') {
            static constexpr std::string_view opens = "([{";
            static constexpr std::string_view closes = ")]}";
            if (brackets_.empty() ||
                brackets_.back().text[0] != opens[closes.find(c)]) {
                throw LexError(tok.span, "unmatched '" + tok.text + "'");
            }
            brackets_.pop_back();
        }
    }

    void emit(TokenKind kind, std::string text, std::size_t start)
    {
        SourceSpan span{line_, col_of(start), line_, col_of(pos_)};
        push(kind, std::move(text), span);
        line_has_tokens_ = true;
    }

    void push(TokenKind kind, std::string text, SourceSpan span)
    {
        tokens_.push_back(Token{kind, std::move(text), span});
    }

    int col_of(std::size_t p) const { return static_cast<int>(p - line_start_) + 1; }

    // Span for synthetic tokens at the current position.
    SourceSpan point_span() const
    {
        int col = col_of(pos_);
        return {line_, col, line_, col + 1};
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_start_ = 0;
    int line_ = 1;
    std::vector<int> indents_{0};
    std::vector<Token> brackets_;
    bool line_has_tokens_ = false;
    std::vector<Token> tokens_;
};

} // namespace

LexError::LexError(SourceSpan span, std::string message)
    : Error(to_string(span) + ": " + message), span_(span), detail_(std::move(message))
{
}

std::span<const std::string_view> reserved_words()
{
    return kReserved;
}

bool is_keyword(std::string_view word)
{
    return std::find(kReserved.begin(), kReserved.end(), word) != kReserved.end();
}

bool is_unsupported_python_keyword(std::string_view word)
{
    return std::find(kUnsupported.begin(), kUnsupported.end(), word) != kUnsupported.end();
}

std::vector<Token> tokenize(std::string_view source)
{
    return Lexer(source).run();
}

std::string decode_string_literal(std::string_view lexeme)
{
    std::string out;
    if (lexeme.size() < 2) {
        return out;
    }
    std::string_view body = lexeme.substr(1, lexeme.size() - 2);
    out.reserve(body.size());
    for (std::size_t i = 0; i < body.size(); ++i) {
        if (body[i] == '\\' && i + 1 < body.size()) {
            char e = body[++i];
            switch (e) {
            case 'n': out.push_back('\n'); break;
            case 't': out.push_back('\t'); break;
            default: out.push_back(e); break;
            }
        } else {
            out.push_back(body[i]);
        }
    }
    return out;
}

std::string_view to_string(TokenKind kind)
{
    switch (kind) {
    case TokenKind::Keyword: return "keyword";
    case TokenKind::Identifier: return "identifier";
    case TokenKind::IntLiteral: return "intLiteral";
    case TokenKind::FloatLiteral: return "floatLiteral";
    case TokenKind::StringLiteral: return "stringLiteral";
    case TokenKind::Operator: return "operator";
    case TokenKind::Delimiter: return "delimiter";
    case TokenKind::Newline: return "newline";
    case TokenKind::Indent: return "indent";
    case TokenKind::Dedent: return "dedent";
    case TokenKind::EndOfFile: return "endOfFile";
    }
    return "?";
}

} // namespace qlc::lang
