#include <doctest.h>

#include <map>
#include <set>

#include "qlc/analysis/purposes.hpp"
#include "qlc/lang/parser.hpp"
#include "test_support.hpp"

using namespace qlc::analysis;
using qlc::lang::parse_source;

namespace {

std::map<int, Purpose> purposes_of(const std::string& source)
{
    std::map<int, Purpose> out;
    for (const PurposeFinding& f : classify_purposes(parse_source(source))) {
        out[f.line] = f.purpose;
    }
    return out;
}

} // namespace

TEST_CASE("F1 purposes")
{
    std::map<int, Purpose> p = purposes_of(qlc::testing::f1_source());
    CHECK(p == std::map<int, Purpose>{{5, Purpose::AcceptsNewData},
                                      {6, Purpose::SentinelTermination},
                                      {12, Purpose::IgnoresNegativeInput},
                                      {16, Purpose::GuardsDivisionByZero}});
}

TEST_CASE("pass has no purposes")
{
    CHECK(purposes_of("pass\n").empty());
}

TEST_CASE("guard before a division")
{
    std::map<int, Purpose> p = purposes_of("def f(total, count):\n    if count > 0:\n        return total / count\n"
                                           "    return 0\n");
    CHECK(p == std::map<int, Purpose>{{2, Purpose::GuardsDivisionByZero}});
}

TEST_CASE("guard shapes")
{
    CHECK(purposes_of("if n != 0:\n    x = t / n\n") == std::map<int, Purpose>{{1, Purpose::GuardsDivisionByZero}});
    CHECK(purposes_of("if 0 < n:\n    x = t / n\n") == std::map<int, Purpose>{{1, Purpose::GuardsDivisionByZero}});
    CHECK(purposes_of("if len(xs) > 0:\n    x = t / len(xs)\n") ==
          std::map<int, Purpose>{{1, Purpose::GuardsDivisionByZero}});
    CHECK(purposes_of("def f(t, n):\n    if n == 0:\n        return 0\n    return t / n\n") ==
          std::map<int, Purpose>{{2, Purpose::GuardsDivisionByZero}});
    CHECK(purposes_of("def f(t, n):\n    if n == 0:\n        return 0\n    else:\n        return t / n\n") ==
          std::map<int, Purpose>{{2, Purpose::GuardsDivisionByZero}});
    CHECK(purposes_of("if n > 0 and t > 0:\n    x = t / n\n") ==
          std::map<int, Purpose>{{1, Purpose::GuardsDivisionByZero}});
    // No division of that name under the condition.
    CHECK(purposes_of("if n > 0:\n    x = t / m\n").empty());
    CHECK(purposes_of("if n > 0:\n    x = t * n\n").empty());
    // Early exit without a later division.
    CHECK(purposes_of("def f(n):\n    if n == 0:\n        return 0\n    return n\n").empty());
}

TEST_CASE("sentinel shapes")
{
    CHECK(purposes_of("while True:\n    v = float(input())\n    if v == -999:\n        break\n")[3] ==
          Purpose::SentinelTermination);
    CHECK(purposes_of("def f():\n    while True:\n        s = input()\n        if s == '-999':\n            "
                      "return 0\n")[4] == Purpose::SentinelTermination);
    CHECK(purposes_of("while True:\n    v = int(input())\n    if v == -999.0:\n        break\n")[3] ==
          Purpose::SentinelTermination);
    CHECK(purposes_of("s = input()\nwhile s != '-999':\n    s = input()\n")[2] == Purpose::SentinelTermination);
    // Not input-derived.
    CHECK(purposes_of("v = 3\nwhile True:\n    if v == -999:\n        break\n").count(3) == 0);
    // Wrong constant.
    CHECK(purposes_of("while True:\n    s = input()\n    if s == '-1':\n        break\n").count(3) == 0);
    // Branch does not end anything.
    CHECK(purposes_of("while True:\n    s = input()\n    if s == '-999':\n        print(s)\n").count(3) == 0);
}

TEST_CASE("sentinel follows the exercise configuration")
{
    std::string source = "while True:\n    s = input()\n    if s == '0':\n        break\n";
    CHECK(purposes_of(source).count(3) == 0);
    auto findings = classify_purposes(parse_source(source), PurposeOptions{0});
    bool found = false;
    for (const PurposeFinding& f : findings) {
        found = found || (f.line == 3 && f.purpose == Purpose::SentinelTermination);
    }
    CHECK(found);
}

TEST_CASE("negative filter shapes")
{
    CHECK(purposes_of("for v in xs:\n    if v < 0:\n        continue\n    t += v\n")[2] ==
          Purpose::IgnoresNegativeInput);
    CHECK(purposes_of("for v in xs:\n    if v >= 0:\n        t += v\n")[2] == Purpose::IgnoresNegativeInput);
    CHECK(purposes_of("for v in xs:\n    if v >= 0:\n        t = t + v\n")[2] == Purpose::IgnoresNegativeInput);
    CHECK(purposes_of("for v in xs:\n    if v >= 0:\n        ys.append(v)\n")[2] ==
          Purpose::IgnoresNegativeInput);
    CHECK(purposes_of("for v in xs:\n    if v >= 0:\n        print(v)\n").count(2) == 0);
    CHECK(purposes_of("for v in xs:\n    if v < 0:\n        print(v)\n").count(2) == 0);
}

TEST_CASE("input statements accept new data")
{
    std::map<int, Purpose> p = purposes_of("a = input()\nb = float(input('x'))\ninput()\nprint(a)\n");
    CHECK(p == std::map<int, Purpose>{
                   {1, Purpose::AcceptsNewData}, {2, Purpose::AcceptsNewData}, {3, Purpose::AcceptsNewData}});
}

TEST_CASE("a line matching two rules is dropped")
{
    // The condition both guards a division and filters negatives.
    std::string source = "for v in xs:\n    if v >= 0:\n        t += v\n        r = t / v\n";
    std::map<int, Purpose> p = purposes_of("if n > 0:\n    x = t / n\n");
    CHECK(p.size() == 1);
    auto both = classify_purposes(parse_source("while True:\n    if float(input()) == -999:\n        break\n"));
    std::set<int> lines;
    for (const PurposeFinding& f : both) {
        CHECK(lines.insert(f.line).second);
    }
    CHECK(lines.count(2) == 0);
}

TEST_CASE("labels and names")
{
    CHECK(purpose_label(Purpose::AcceptsNewData) == "Accepts new data");
    CHECK(purpose_label(Purpose::GuardsDivisionByZero) == "Guards against division by zero");
    CHECK(purpose_label(Purpose::SentinelTermination) == "Is a condition for ending the program");
    CHECK(purpose_label(Purpose::IgnoresNegativeInput) == "Ignores negative input");
    for (Purpose p : kAllPurposes) {
        CHECK(purpose_from_string(to_string(p)) == p);
    }
    CHECK_FALSE(purpose_from_string("Nope").has_value());
}

TEST_CASE("at most one purpose per line, each on a statement line")
{
    for (const auto& path : qlc::testing::corpus_files()) {
        std::string source = qlc::testing::read_text(path);
        qlc::lang::Ast ast = parse_source(source);
        std::set<int> statement_lines;
        qlc::lang::walk_stmts(ast.root.body, [&](const qlc::lang::Stmt& s) { statement_lines.insert(s.line()); });
        std::set<int> seen;
        auto findings = classify_purposes(ast);
        CAPTURE(path.filename().string());
        CHECK_FALSE(findings.empty());
        for (const PurposeFinding& f : findings) {
            CHECK(seen.insert(f.line).second);
            CHECK(statement_lines.count(f.line) == 1);
        }
    }
}
