#include "qlc/lang/parser.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <set>

#include "qlc/lang/lexer.hpp"

namespace qlc::lang {

namespace {

std::string describe(const Token& tok)
{
    switch (tok.kind) {
    case TokenKind::Newline: return "end of line";
    case TokenKind::Indent: return "indent";
    case TokenKind::Dedent: return "dedent";
    case TokenKind::EndOfFile: return "end of file";
    default: return "'" + tok.text + "'";
    }
}

class Parser {
public:
    explicit Parser(std::span<const Token> tokens) : toks_(tokens)
    {
        if (toks_.empty() || toks_.back().kind != TokenKind::EndOfFile) {
            throw ParseError({}, "token stream ending in end of file", "truncated stream");
        }
    }

    Program program()
    {
        Program prog;
        while (!at(TokenKind::EndOfFile)) {
            prog.body.push_back(statement());
        }
        if (prog.body.empty()) {
            prog.span = {1, 1, 1, 2};
        } else {
            prog.span = cover(prog.body.front().span, prog.body.back().span);
        }
        return prog;
    }

    Expr lone_expression()
    {
        Expr e = expression();
        accept(TokenKind::Newline);
        if (!at(TokenKind::EndOfFile)) {
            fail("end of expression");
        }
        return e;
    }

private:
    // Token access

    const Token& peek(std::size_t ahead = 0) const
    {
        std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
        return toks_[i];
    }

    bool at(TokenKind kind) const { return peek().kind == kind; }
    bool at(TokenKind kind, std::string_view text) const { return peek().is(kind, text); }
    bool at_keyword(std::string_view kw) const { return peek().is_keyword(kw); }
    bool at_op(std::string_view op) const { return at(TokenKind::Operator, op); }
    bool at_delim(std::string_view d) const { return at(TokenKind::Delimiter, d); }

    const Token& advance()
    {
        const Token& t = toks_[pos_];
        if (pos_ + 1 < toks_.size()) {
            ++pos_;
        }
        return t;
    }

    bool accept(TokenKind kind)
    {
        if (at(kind)) {
            advance();
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(std::string expected) const
    {
        throw ParseError(peek().span, std::move(expected), describe(peek()));
    }

    const Token& expect(TokenKind kind, std::string_view text, std::string_view shown)
    {
        if (!at(kind, text)) {
            fail(std::string(shown));
        }
        return advance();
    }

    const Token& expect_delim(std::string_view d) { return expect(TokenKind::Delimiter, d, "'" + std::string(d) + "'"); }

    const Token& expect_keyword(std::string_view kw)
    {
        return expect(TokenKind::Keyword, kw, "'" + std::string(kw) + "'");
    }

    const Token& expect_identifier(std::string_view what)
    {
        if (!at(TokenKind::Identifier)) {
            fail(std::string(what));
        }
        check_plain_name(peek(), what);
        return advance();
    }

    void check_plain_name(const Token& tok, std::string_view what) const
    {
        if (is_unsupported_python_keyword(tok.text)) {
            throw ParseError(tok.span, std::string(what),
                             "unsupported keyword '" + tok.text + "'");
        }
        if (tok.text == "True" || tok.text == "False" || tok.text == "None") {
            throw ParseError(tok.span, std::string(what), "constant '" + tok.text + "'");
        }
    }

    SourceSpan prev_span() const { return toks_[pos_ == 0 ? 0 : pos_ - 1].span; }

    // Statements

    Stmt statement()
    {
        if (at(TokenKind::Indent)) {
            fail("statement (unexpected indent)");
        }
        if (at_keyword("def")) {
            return funcdef();
        }
        if (at_keyword("if")) {
            return if_stmt();
        }
        if (at_keyword("while")) {
            return while_stmt();
        }
        if (at_keyword("for")) {
            return for_stmt();
        }
        if (at_keyword("try")) {
            return try_stmt();
        }
        if (at_keyword("elif") || at_keyword("else") || at_keyword("except")) {
            fail("statement");
        }
        Stmt s = simple_statement();
        if (!at(TokenKind::Newline)) {
            fail("end of line");
        }
        advance();
        return s;
    }

    Stmt simple_statement()
    {
        const Token& first = peek();
        if (first.kind == TokenKind::Identifier && is_unsupported_python_keyword(first.text)) {
            throw ParseError(first.span, "statement", "unsupported statement '" + first.text + "'");
        }
        if (at_keyword("pass")) {
            return {advance().span, Pass{}};
        }
        if (at_keyword("break") || at_keyword("continue")) {
            const Token& t = advance();
            if (loop_depth_ == 0) {
                throw ParseError(t.span, "statement", "'" + t.text + "' outside loop");
            }
            if (t.text == "break") {
                return {t.span, Break{}};
            }
            return {t.span, Continue{}};
        }
        if (at_keyword("return")) {
            const Token& t = advance();
            if (function_depth_ == 0) {
                throw ParseError(t.span, "statement", "'return' outside function");
            }
            if (at(TokenKind::Newline)) {
                return {t.span, Return{}};
            }
            Expr value = expression();
            SourceSpan span = cover(t.span, value.span);
            return {span, Return{std::move(value)}};
        }
        if (peek().kind == TokenKind::Keyword || peek().kind == TokenKind::Operator ||
            (peek().kind == TokenKind::Delimiter && !at_delim("(") && !at_delim("["))) {
            if (!starts_expression()) {
                fail("statement");
            }
        }

        Expr lhs = expression();
        if (at_op("=")) {
            advance();
            check_target(lhs);
            Expr value = expression();
            if (at_op("=")) {
                fail("end of line (chained assignment is not supported)");
            }
            SourceSpan span = cover(lhs.span, value.span);
            return {span, Assign{std::move(lhs), std::move(value)}};
        }
        static constexpr std::pair<std::string_view, AugOperator> aug_ops[] = {
            {"+=", AugOperator::Add},
            {"-=", AugOperator::Sub},
            {"*=", AugOperator::Mul},
            {"/=", AugOperator::Div},
        };
        for (auto [text, op] : aug_ops) {
            if (at_op(text)) {
                advance();
                check_target(lhs);
                Expr value = expression();
                SourceSpan span = cover(lhs.span, value.span);
                return {span, AugAssign{op, std::move(lhs), std::move(value)}};
            }
        }
        if (peek().kind == TokenKind::Operator &&
            (peek().text.ends_with("=") && peek().text != "==" && peek().text != "!=" &&
             peek().text != "<=" && peek().text != ">=")) {
            fail("'=', '+=', '-=', '*=' or '/='");
        }
        SourceSpan span = lhs.span;
        return {span, ExprStmt{std::move(lhs)}};
    }

    bool starts_expression() const
    {
        const Token& t = peek();
        switch (t.kind) {
        case TokenKind::Identifier:
        case TokenKind::IntLiteral:
        case TokenKind::FloatLiteral:
        case TokenKind::StringLiteral:
            return true;
        case TokenKind::Keyword:
            return t.text == "not";
        case TokenKind::Operator:
            return t.text == "-";
        case TokenKind::Delimiter:
            return t.text == "(" || t.text == "[";
        default:
            return false;
        }
    }

    void check_target(const Expr& target) const
    {
        if (!target.is<Name>() && !target.is<Subscript>()) {
            throw ParseError(target.span, "assignment target (a name or subscription)",
                             std::string(node_kind(target)));
        }
    }

    // ':' followed by an indented block or a single simple statement.
    Block suite()
    {
        expect_delim(":");
        Block body;
        if (!at(TokenKind::Newline)) {
            body.push_back(simple_statement());
            if (!at(TokenKind::Newline)) {
                fail("end of line");
            }
            advance();
            return body;
        }
        advance();
        if (!at(TokenKind::Indent)) {
            fail("an indented block");
        }
        advance();
        while (!at(TokenKind::Dedent) && !at(TokenKind::EndOfFile)) {
            body.push_back(statement());
        }
        accept(TokenKind::Dedent);
        return body;
    }

    Stmt funcdef()
    {
        const Token& kw = advance();
        std::string name = expect_identifier("function name").text;
        expect_delim("(");
        std::vector<Param> params;
        std::set<std::string> seen;
        while (!at_delim(")")) {
            const Token& p = expect_identifier("parameter name");
            if (!seen.insert(p.text).second) {
                throw ParseError(p.span, "distinct parameter names",
                                 "duplicate parameter '" + p.text + "'");
            }
            params.push_back({p.text, p.span});
            if (at_op("=")) {
                fail("',' or ')' (default values are not supported)");
            }
            if (!at_delim(")")) {
                expect_delim(",");
            }
        }
        advance();
        // Loops do not extend into nested function bodies.
        int saved_loops = loop_depth_;
        loop_depth_ = 0;
        ++function_depth_;
        Block body = suite();
        --function_depth_;
        loop_depth_ = saved_loops;
        SourceSpan span = cover(kw.span, body.back().span);
        return {span, FuncDef{std::move(name), std::move(params), std::move(body)}};
    }

    Stmt if_stmt()
    {
        const Token& kw = advance();
        If node{expression(), suite(), {}, std::nullopt};
        SourceSpan end = node.body.back().span;
        while (at_keyword("elif")) {
            const Token& ekw = advance();
            Expr cond = expression();
            Block body = suite();
            SourceSpan espan = cover(ekw.span, body.back().span);
            end = espan;
            node.elifs.push_back({espan, std::move(cond), std::move(body)});
        }
        if (at_keyword("else")) {
            advance();
            node.orelse = suite();
            end = node.orelse->back().span;
        }
        return {cover(kw.span, end), std::move(node)};
    }

    Stmt while_stmt()
    {
        const Token& kw = advance();
        Expr cond = expression();
        ++loop_depth_;
        Block body = suite();
        --loop_depth_;
        if (at_keyword("else")) {
            fail("statement ('while ... else' is not supported)");
        }
        SourceSpan span = cover(kw.span, body.back().span);
        return {span, While{std::move(cond), std::move(body)}};
    }

    Stmt for_stmt()
    {
        const Token& kw = advance();
        const Token& var = expect_identifier("loop variable name");
        Expr target{var.span, Name{var.text}};
        expect_keyword("in");
        Expr iterable = expression();
        ++loop_depth_;
        Block body = suite();
        --loop_depth_;
        if (at_keyword("else")) {
            fail("statement ('for ... else' is not supported)");
        }
        SourceSpan span = cover(kw.span, body.back().span);
        return {span, For{std::move(target), std::move(iterable), std::move(body)}};
    }

    Stmt try_stmt()
    {
        const Token& kw = advance();
        Block body = suite();
        if (!at_keyword("except")) {
            fail("'except'");
        }
        std::vector<Handler> handlers;
        bool saw_bare = false;
        while (at_keyword("except")) {
            const Token& ekw = advance();
            if (saw_bare) {
                throw ParseError(ekw.span, "end of try statement",
                                 "handler after bare 'except'");
            }
            Handler h;
            if (at_delim("(")) {
                advance();
                do {
                    if (at_delim(")")) {
                        break;
                    }
                    h.exception_names.push_back(expect_identifier("exception name").text);
                } while (at_delim(",") && (advance(), true));
                expect_delim(")");
                if (h.exception_names.empty()) {
                    throw ParseError(prev_span(), "exception name", "'()'");
                }
            } else if (at(TokenKind::Identifier)) {
                h.exception_names.push_back(expect_identifier("exception name").text);
            }
            if (at_keyword("as")) {
                if (h.exception_names.empty()) {
                    fail("':'");
                }
                advance();
                h.bound_name = expect_identifier("name after 'as'").text;
            }
            saw_bare = h.exception_names.empty();
            h.body = suite();
            h.span = cover(ekw.span, h.body.back().span);
            handlers.push_back(std::move(h));
        }
        if (at_keyword("else")) {
            fail("statement ('try ... else' is not supported)");
        }
        if (at(TokenKind::Identifier, "finally")) {
            fail("statement ('finally' is not supported)");
        }
        SourceSpan span = cover(kw.span, handlers.back().span);
        return {span, Try{std::move(body), std::move(handlers)}};
    }

    // Expressions, lowest precedence first.

    Expr expression() { return or_expr(); }

    Expr or_expr()
    {
        Expr lhs = and_expr();
        while (at_keyword("or")) {
            advance();
            Expr rhs = and_expr();
            SourceSpan span = cover(lhs.span, rhs.span);
            lhs = Expr{span, BoolOp{BoolOperator::Or, std::move(lhs), std::move(rhs)}};
        }
        return lhs;
    }

    Expr and_expr()
    {
        Expr lhs = not_expr();
        while (at_keyword("and")) {
            advance();
            Expr rhs = not_expr();
            SourceSpan span = cover(lhs.span, rhs.span);
            lhs = Expr{span, BoolOp{BoolOperator::And, std::move(lhs), std::move(rhs)}};
        }
        return lhs;
    }

    Expr not_expr()
    {
        if (at_keyword("not")) {
            const Token& kw = advance();
            Expr operand = not_expr();
            SourceSpan span = cover(kw.span, operand.span);
            return Expr{span, UnaryOp{UnaryOperator::Not, std::move(operand)}};
        }
        return comparison();
    }

    std::optional<CompareOperator> compare_op() const
    {
        if (peek().kind != TokenKind::Operator) {
            return std::nullopt;
        }
        const std::string& t = peek().text;
        if (t == "==") return CompareOperator::Eq;
        if (t == "!=") return CompareOperator::NotEq;
        if (t == "<") return CompareOperator::Lt;
        if (t == "<=") return CompareOperator::LtE;
        if (t == ">") return CompareOperator::Gt;
        if (t == ">=") return CompareOperator::GtE;
        return std::nullopt;
    }

    Expr comparison()
    {
        Expr lhs = arith();
        if (at_keyword("in") || at_keyword("not")) {
            fail("end of expression ('in' tests are not supported)");
        }
        auto op = compare_op();
        if (!op) {
            return lhs;
        }
        advance();
        Expr rhs = arith();
        if (compare_op()) {
            fail("end of comparison (chained comparisons are not supported)");
        }
        SourceSpan span = cover(lhs.span, rhs.span);
        return Expr{span, Compare{*op, std::move(lhs), std::move(rhs)}};
    }

    Expr arith()
    {
        Expr lhs = term();
        while (at_op("+") || at_op("-")) {
            BinaryOperator op = advance().text == "+" ? BinaryOperator::Add : BinaryOperator::Sub;
            Expr rhs = term();
            SourceSpan span = cover(lhs.span, rhs.span);
            lhs = Expr{span, BinOp{op, std::move(lhs), std::move(rhs)}};
        }
        return lhs;
    }

    Expr term()
    {
        Expr lhs = unary();
        while (at_op("*") || at_op("/") || at_op("//") || at_op("%")) {
            const std::string& t = advance().text;
            BinaryOperator op = t == "*"    ? BinaryOperator::Mul
                                : t == "/"  ? BinaryOperator::Div
                                : t == "//" ? BinaryOperator::FloorDiv
                                            : BinaryOperator::Mod;
            Expr rhs = unary();
            SourceSpan span = cover(lhs.span, rhs.span);
            lhs = Expr{span, BinOp{op, std::move(lhs), std::move(rhs)}};
        }
        if (at_op("**")) {
            fail("operator ('**' is not supported)");
        }
        return lhs;
    }

    Expr unary()
    {
        if (at_op("-")) {
            const Token& minus = advance();
            Expr operand = unary();
            SourceSpan span = cover(minus.span, operand.span);
            return Expr{span, UnaryOp{UnaryOperator::Neg, std::move(operand)}};
        }
        return primary();
    }

    std::vector<Expr> arguments()
    {
        // Opening '(' already consumed.
        std::vector<Expr> args;
        while (!at_delim(")")) {
            args.push_back(expression());
            if (at_op("=")) {
                fail("',' or ')' (keyword arguments are not supported)");
            }
            if (!at_delim(")")) {
                expect_delim(",");
            }
        }
        advance();
        return args;
    }

    Expr primary()
    {
        Expr e = atom();
        while (true) {
            if (at_delim("(")) {
                if (!e.is<Name>()) {
                    fail("operator or end of expression (only names can be called)");
                }
                advance();
                std::vector<Expr> args = arguments();
                SourceSpan span = cover(e.span, prev_span());
                e = Expr{span, Call{std::move(e), std::move(args)}};
            } else if (at_delim("[")) {
                advance();
                if (at_delim(":")) {
                    fail("expression (slicing is not supported)");
                }
                Expr index = expression();
                if (at_delim(":")) {
                    fail("']' (slicing is not supported)");
                }
                expect_delim("]");
                SourceSpan span = cover(e.span, prev_span());
                e = Expr{span, Subscript{std::move(e), std::move(index)}};
            } else if (at_delim(".")) {
                advance();
                if (!at(TokenKind::Identifier, "append")) {
                    fail("'append' (the only supported method)");
                }
                std::string method = advance().text;
                expect_delim("(");
                std::vector<Expr> args = arguments();
                SourceSpan span = cover(e.span, prev_span());
                e = Expr{span, MethodCall{std::move(e), std::move(method), std::move(args)}};
            } else {
                return e;
            }
        }
    }

    Expr atom()
    {
        const Token& t = peek();
        switch (t.kind) {
        case TokenKind::Identifier: {
            advance();
            if (t.text == "True" || t.text == "False") {
                return Expr{t.span, BoolLit{t.text == "True"}};
            }
            if (t.text == "None") {
                return Expr{t.span, NoneLit{}};
            }
            if (is_unsupported_python_keyword(t.text)) {
                throw ParseError(t.span, "expression", "unsupported keyword '" + t.text + "'");
            }
            return Expr{t.span, Name{t.text}};
        }
        case TokenKind::IntLiteral: {
            advance();
            std::int64_t v = 0;
            std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
            return Expr{t.span, IntLit{v}};
        }
        case TokenKind::FloatLiteral: {
            advance();
            return Expr{t.span, FloatLit{std::strtod(t.text.c_str(), nullptr)}};
        }
        case TokenKind::StringLiteral: {
            advance();
            if (at(TokenKind::StringLiteral)) {
                fail("operator (implicit string concatenation is not supported)");
            }
            return Expr{t.span, StringLit{decode_string_literal(t.text)}};
        }
        case TokenKind::Delimiter:
            if (t.text == "(") {
                const Token& open = advance();
                Expr inner = expression();
                if (at_delim(",")) {
                    fail("')' (tuples are not supported)");
                }
                expect_delim(")");
                // The node covers its parentheses.
                inner.span = cover(open.span, prev_span());
                return inner;
            }
            if (t.text == "[") {
                const Token& open = advance();
                std::vector<Expr> elements;
                while (!at_delim("]")) {
                    elements.push_back(expression());
                    if (at_keyword("for")) {
                        fail("',' or ']' (comprehensions are not supported)");
                    }
                    if (!at_delim("]")) {
                        expect_delim(",");
                    }
                }
                advance();
                return Expr{cover(open.span, prev_span()), ListDisplay{std::move(elements)}};
            }
            break;
        default:
            break;
        }
        fail("expression");
    }

    std::span<const Token> toks_;
    std::size_t pos_ = 0;
    int loop_depth_ = 0;
    int function_depth_ = 0;
};

} // namespace

ParseError::ParseError(SourceSpan span, std::string expected, std::string found)
    : Error(to_string(span) + ": expected " + expected + " but found " + found),
      span_(span),
      expected_(std::move(expected)),
      found_(std::move(found))
{
}

Ast parse(std::span<const Token> tokens)
{
    return Ast{Parser(tokens).program()};
}

Ast parse_source(std::string_view source)
{
    std::vector<Token> tokens = tokenize(source);
    return parse(tokens);
}

Expr parse_expression(std::string_view text)
{
    std::vector<Token> tokens = tokenize(text);
    return Parser(tokens).lone_expression();
}

std::string span_text(std::string_view source, const SourceSpan& span)
{
    std::size_t line = 1;
    std::size_t pos = 0;
    auto offset_of = [&](int target_line, int col) -> std::size_t {
        while (line < static_cast<std::size_t>(target_line) && pos < source.size()) {
            if (source[pos++] == '\n') {
                ++line;
            }
        }
        return std::min(source.size(), pos + static_cast<std::size_t>(col - 1));
    };
    std::size_t begin = offset_of(span.start_line, span.start_col);
    std::size_t end = offset_of(span.end_line, span.end_col);
    if (end < begin) {
        return {};
    }
    return std::string(source.substr(begin, end - begin));
}

} // namespace qlc::lang
