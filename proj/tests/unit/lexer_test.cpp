#include <doctest.h>

#include <set>

#include "qlc/lang/lexer.hpp"
#include "test_support.hpp"

using namespace qlc::lang;

namespace {

std::vector<TokenKind> kinds_of(const std::vector<Token>& tokens)
{
    std::vector<TokenKind> out;
    for (const Token& t : tokens) {
        out.push_back(t.kind);
    }
    return out;
}

int count_kind(const std::vector<Token>& tokens, TokenKind kind)
{
    int n = 0;
    for (const Token& t : tokens) {
        n += t.kind == kind ? 1 : 0;
    }
    return n;
}

} // namespace

TEST_CASE("single assignment tokenizes to five tokens")
{
    std::vector<Token> tokens = tokenize("x = 1\n");
    CHECK(kinds_of(tokens) == std::vector<TokenKind>{TokenKind::Identifier, TokenKind::Operator,
                                                     TokenKind::IntLiteral, TokenKind::Newline,
                                                     TokenKind::EndOfFile});
    CHECK(tokens[0].text == "x");
    CHECK(tokens[1].text == "=");
    CHECK(tokens[2].text == "1");
}

TEST_CASE("empty source is just end of file")
{
    std::vector<Token> tokens = tokenize("");
    REQUIRE(tokens.size() == 1);
    CHECK(tokens[0].kind == TokenKind::EndOfFile);
}

TEST_CASE("F1 balances indentation and uses eight keywords")
{
    std::vector<Token> tokens = tokenize(qlc::testing::f1_source());
    CHECK(count_kind(tokens, TokenKind::Indent) == count_kind(tokens, TokenKind::Dedent));
    CHECK(count_kind(tokens, TokenKind::Indent) > 0);

    std::set<std::string> keywords;
    for (const Token& t : tokens) {
        if (t.kind == TokenKind::Keyword) {
            keywords.insert(t.text);
        }
    }
    CHECK(keywords == std::set<std::string>{"def", "while", "if", "break", "try", "except", "continue", "return"});
    CHECK(tokens.back().kind == TokenKind::EndOfFile);
}

TEST_CASE("corpus programs balance indentation")
{
    for (const auto& path : qlc::testing::corpus_files()) {
        CAPTURE(path.filename().string());
        std::vector<Token> tokens = tokenize(qlc::testing::read_text(path));
        CHECK(count_kind(tokens, TokenKind::Indent) == count_kind(tokens, TokenKind::Dedent));
    }
}

TEST_CASE("comments and blank lines produce no tokens")
{
    std::vector<Token> plain = tokenize("x = 1\ny = 2\n");
    std::vector<Token> noisy = tokenize("# header\n\nx = 1  # trailing\n\n   \n# between\ny = 2\n");
    REQUIRE(plain.size() == noisy.size());
    for (std::size_t i = 0; i < plain.size(); ++i) {
        CHECK(plain[i].kind == noisy[i].kind);
        CHECK(plain[i].text == noisy[i].text);
    }
}

TEST_CASE("a missing final newline still ends the statement")
{
    std::vector<Token> tokens = tokenize("x = 1");
    CHECK(kinds_of(tokens) == std::vector<TokenKind>{TokenKind::Identifier, TokenKind::Operator,
                                                     TokenKind::IntLiteral, TokenKind::Newline,
                                                     TokenKind::EndOfFile});
}

TEST_CASE("newlines inside brackets are ignored")
{
    std::vector<Token> tokens = tokenize("x = [1,\n     2]\n");
    CHECK(count_kind(tokens, TokenKind::Newline) == 1);
    CHECK(count_kind(tokens, TokenKind::Indent) == 0);
}

TEST_CASE("dedent to every open level at end of file")
{
    std::vector<Token> tokens = tokenize("if a:\n    if b:\n        pass\n");
    CHECK(count_kind(tokens, TokenKind::Indent) == 2);
    CHECK(count_kind(tokens, TokenKind::Dedent) == 2);
}

TEST_CASE("a tab counts as eight columns")
{
    std::vector<Token> tokens = tokenize("if a:\n\tx = 1\n        y = 2\n");
    CHECK(count_kind(tokens, TokenKind::Indent) == 1);
    CHECK(count_kind(tokens, TokenKind::Dedent) == 1);
}

TEST_CASE("numbers")
{
    std::vector<Token> tokens = tokenize("a = 12 + 3.5 + .5 + 1e3\n");
    CHECK(tokens[2].kind == TokenKind::IntLiteral);
    CHECK(tokens[4].kind == TokenKind::FloatLiteral);
    CHECK(tokens[6].kind == TokenKind::FloatLiteral);
    CHECK(tokens[8].kind == TokenKind::FloatLiteral);
}

TEST_CASE("string literal escapes")
{
    CHECK(decode_string_literal(R"("a\nb")") == "a\nb");
    CHECK(decode_string_literal(R"('it\'s')") == "it's");
    CHECK(decode_string_literal(R"("tab\there")") == "tab\there");
    CHECK(decode_string_literal(R"("back\\slash")") == "back\\slash");
    CHECK(decode_string_literal(R"("say \"hi\"")") == "say \"hi\"");
}

TEST_CASE("lexical errors carry a position")
{
    SUBCASE("tab and space mixed in one prefix")
    {
        CHECK_THROWS_AS(tokenize("if a:\n \tx = 1\n"), LexError);
    }
    SUBCASE("unterminated string")
    {
        try {
            tokenize("x = \"abc\n");
            FAIL("expected LexError");
        } catch (const LexError& e) {
            CHECK(e.span().start_line == 1);
            CHECK(e.span().start_col == 5);
        }
    }
    SUBCASE("illegal character")
    {
        try {
            tokenize("x = 1\ny = $\n");
            FAIL("expected LexError");
        } catch (const LexError& e) {
            CHECK(e.span().start_line == 2);
            CHECK(e.span().start_col == 5);
        }
    }
    SUBCASE("inconsistent dedent")
    {
        CHECK_THROWS_AS(tokenize("if a:\n    x = 1\n  y = 2\n"), LexError);
    }
    SUBCASE("unknown escape")
    {
        CHECK_THROWS_AS(tokenize("x = \"\\q\"\n"), LexError);
    }
}

TEST_CASE("reserved words")
{
    for (std::string_view w : {"def", "return", "if", "elif", "else", "while", "for", "in", "try", "except", "as",
                               "break", "continue", "pass", "and", "or", "not"}) {
        CAPTURE(w);
        CHECK(is_keyword(w));
    }
    CHECK_FALSE(is_keyword("print"));
    CHECK_FALSE(is_keyword("value"));
}
