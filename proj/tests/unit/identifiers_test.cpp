#include <doctest.h>

#include <set>

#include "qlc/analysis/identifiers.hpp"
#include "qlc/lang/parser.hpp"
#include "test_support.hpp"

using namespace qlc::analysis;
using qlc::lang::parse_source;

namespace {

std::set<std::string> as_set(const std::vector<std::string>& v)
{
    return {v.begin(), v.end()};
}

IdentifierTable table_of(const std::string& source)
{
    return classify_identifiers(parse_source(source));
}

} // namespace

TEST_CASE("F1 identifiers")
{
    IdentifierTable t = table_of(qlc::testing::f1_source());
    CHECK(as_set(t.variable_names()) == std::set<std::string>{"total", "count", "line", "value"});
    CHECK(as_set(t.builtin_names()) == std::set<std::string>{"input", "float", "print"});
    std::set<std::string> keywords = as_set(t.keyword_names());
    for (const char* k : {"while", "try", "except", "if", "return", "def", "break", "continue"}) {
        CHECK(keywords.count(k) == 1);
    }
    REQUIRE(t.functions_defined.size() == 1);
    CHECK(t.functions_defined[0].name == "rain");

    const Variable* total = nullptr;
    for (const Variable& v : t.variables) {
        if (v.name == "total") {
            total = &v;
        }
    }
    REQUIRE(total != nullptr);
    REQUIRE(total->definition_sites.size() == 2);
    CHECK(total->definition_sites[0].start_line == 2);
    CHECK(total->definition_sites[1].start_line == 14);
}

TEST_CASE("pass has only a keyword")
{
    IdentifierTable t = table_of("pass\n");
    CHECK(t.variables.empty());
    CHECK(t.builtins_used.empty());
    CHECK(t.functions_defined.empty());
    CHECK(t.keyword_names() == std::vector<std::string>{"pass"});
}

TEST_CASE("a shadowing assignment makes a variable")
{
    IdentifierTable t = table_of("sum = 0\nfor x in range(3):\n    sum = sum + x\nprint(sum)\n");
    CHECK(t.is_variable("sum"));
    CHECK(as_set(t.builtin_names()) == std::set<std::string>{"range", "print"});
    CHECK(t.is_variable("x"));

    IdentifierTable called = table_of("input = 5\nprint(input)\n");
    CHECK(called.is_variable("input"));
    CHECK(as_set(called.builtin_names()) == std::set<std::string>{"print"});
}

TEST_CASE("variable kinds")
{
    IdentifierTable t = table_of("def f(a):\n    for i in a:\n        pass\n    try:\n        b = 1\n    except "
                                 "ValueError as err:\n        pass\n    c += 1\n");
    std::map<std::string, VariableKind> kinds;
    for (const Variable& v : t.variables) {
        kinds[v.name] = v.kind;
    }
    CHECK(kinds.at("a") == VariableKind::Parameter);
    CHECK(kinds.at("i") == VariableKind::ForTarget);
    CHECK(kinds.at("b") == VariableKind::Assigned);
    CHECK(kinds.at("err") == VariableKind::ExceptBinding);
    CHECK(kinds.at("c") == VariableKind::Assigned);
    CHECK(t.keyword_names() == std::vector<std::string>{"as", "def", "except", "for", "in", "pass", "try"});
}

TEST_CASE("function names never feed options")
{
    IdentifierTable t = table_of("def total():\n    return 1\ntotal = total()\nprint(total)\n");
    CHECK_FALSE(t.is_variable("total"));
    REQUIRE(t.functions_defined.size() == 1);
    CHECK(t.functions_defined[0].name == "total");

    IdentifierTable shadow = table_of("def print(x):\n    return x\nprint(1)\n");
    CHECK(shadow.builtin_names().empty());
}

TEST_CASE("builtins are only counted when called")
{
    IdentifierTable t = table_of("f = float\nx = len\n");
    CHECK(t.builtin_names().empty());
}

TEST_CASE("subscript targets are not new variables")
{
    IdentifierTable t = table_of("xs = [0]\nxs[0] = 1\n");
    CHECK(t.variable_names() == std::vector<std::string>{"xs"});
}

TEST_CASE("literal and operator keywords")
{
    IdentifierTable t = table_of("x = True and not None or False\n");
    std::set<std::string> keywords = as_set(t.keyword_names());
    CHECK(keywords == std::set<std::string>{"True", "and", "not", "None", "or", "False"});
}

TEST_CASE("the four sets are disjoint and sorted")
{
    std::vector<std::string> sources{qlc::testing::f1_source()};
    for (const auto& path : qlc::testing::corpus_files()) {
        sources.push_back(qlc::testing::read_text(path));
    }
    for (const std::string& source : sources) {
        IdentifierTable t = table_of(source);
        std::vector<std::string> all = t.variable_names();
        for (const auto& names : {t.builtin_names(), t.keyword_names()}) {
            all.insert(all.end(), names.begin(), names.end());
        }
        for (const NameUse& f : t.functions_defined) {
            all.push_back(f.name);
        }
        CHECK(as_set(all).size() == all.size());
        auto vars = t.variable_names();
        CHECK(std::is_sorted(vars.begin(), vars.end()));
    }
}

TEST_CASE("names in program")
{
    std::set<std::string> names = names_in_program(parse_source(qlc::testing::f1_source()));
    for (const char* n : {"rain", "total", "count", "line", "value", "input", "float", "print", "ValueError",
                          "__name__"}) {
        CHECK(names.count(n) == 1);
    }
    CHECK(names.count("data") == 0);
}
