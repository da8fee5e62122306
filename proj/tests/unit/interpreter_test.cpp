#include <doctest.h>

#include <cmath>

#include "qlc/interp/interpreter.hpp"
#include "qlc/lang/parser.hpp"
#include "test_support.hpp"

using namespace qlc::interp;
using qlc::lang::parse_source;

namespace {

ExecTrace run(const std::string& source, std::vector<std::string> inputs = {},
              std::int64_t step_limit = kDefaultStepLimit)
{
    return execute(parse_source(source), IoScript{std::move(inputs)}, step_limit);
}

std::vector<RaiseEvent> raises(const ExecTrace& trace)
{
    std::vector<RaiseEvent> out;
    for (const TraceEvent& e : trace.events) {
        if (const auto* r = std::get_if<RaiseEvent>(&e)) {
            out.push_back(*r);
        }
    }
    return out;
}

std::vector<HandleEvent> handles(const ExecTrace& trace)
{
    std::vector<HandleEvent> out;
    for (const TraceEvent& e : trace.events) {
        if (const auto* h = std::get_if<HandleEvent>(&e)) {
            out.push_back(*h);
        }
    }
    return out;
}

FaultKind fault_kind(const ExecTrace& trace)
{
    REQUIRE(trace.fault() != nullptr);
    return trace.fault()->kind;
}

// Output of `print(<expr>)`.
std::string eval_print(const std::string& expr)
{
    ExecTrace t = run("print(" + expr + ")\n");
    REQUIRE_MESSAGE(t.fault() == nullptr, expr);
    REQUIRE(t.stdout_lines.size() == 1);
    return t.stdout_lines[0];
}

} // namespace

TEST_CASE("F1 averages two numbers")
{
    ExecTrace t = execute(parse_source(qlc::testing::f1_source()), IoScript{{"1", "2", "-999"}});
    CHECK(t.stdout_lines == std::vector<std::string>{"1.5"});
    REQUIRE(t.value() != nullptr);
    CHECK(t.value()->is_none());
    CHECK(raises(t).empty());
}

TEST_CASE("F1 handles a non-number")
{
    ExecTrace t = execute(parse_source(qlc::testing::f1_source()), IoScript{{"abc", "-999"}});
    CHECK(t.stdout_lines == std::vector<std::string>{"0"});
    REQUIRE(t.events.size() >= 2);
    CHECK(raises(t) == std::vector<RaiseEvent>{{9, "ValueError"}});
    CHECK(handles(t) == std::vector<HandleEvent>{{10, "ValueError"}});

    // The raise immediately precedes its handle.
    std::size_t r = 0;
    for (; r < t.events.size(); ++r) {
        if (std::holds_alternative<RaiseEvent>(t.events[r])) {
            break;
        }
    }
    REQUIRE(r + 1 < t.events.size());
    CHECK(std::holds_alternative<HandleEvent>(t.events[r + 1]));
}

TEST_CASE("F1 returns 0 without acceptable numbers")
{
    ExecTrace t = execute(parse_source(qlc::testing::f1_source()), IoScript{{"-999"}});
    CHECK(t.stdout_lines == std::vector<std::string>{"0"});
}

TEST_CASE("calling rain directly")
{
    qlc::lang::Ast f1 = parse_source(qlc::testing::f1_source());

    ExecTrace four = call_function(f1, "rain", {}, IoScript{{"4", "-999"}});
    REQUIRE(four.value() != nullptr);
    CHECK(four.value()->is_float());
    CHECK(four.value()->as_float() == 4.0);
    CHECK(four.stdout_lines.empty());

    ExecTrace negative = call_function(f1, "rain", {}, IoScript{{"-5", "-999"}});
    REQUIRE(negative.value() != nullptr);
    CHECK(negative.value()->is_int());
    CHECK(negative.value()->as_int() == 0);

    CHECK_THROWS_AS(call_function(f1, "norain", {}, IoScript{}), UnknownFunction);
}

TEST_CASE("call_function skips the main guard and records the call")
{
    ExecTrace t = call_function(parse_source(qlc::testing::f1_source()), "rain", {}, IoScript{{"-999"}});
    CHECK(t.stdout_lines.empty());
    REQUIRE(!t.events.empty());
    CHECK(std::holds_alternative<CallEvent>(t.events.front()));
    CHECK(std::get<CallEvent>(t.events.front()).function_name == "rain");
}

TEST_CASE("call_function passes arguments")
{
    qlc::lang::Ast ast = parse_source("def add(a, b):\n    return a + b\n");
    ExecTrace t = call_function(ast, "add", {Value(2), Value(3)}, IoScript{});
    REQUIRE(t.value() != nullptr);
    CHECK(t.value()->as_int() == 5);
    ExecTrace wrong = call_function(ast, "add", {Value(2)}, IoScript{});
    CHECK(fault_kind(wrong) == FaultKind::TypeFault);
}

TEST_CASE("print joins arguments with spaces and input does not echo")
{
    ExecTrace t = run("name = input('Who? ')\nprint('hi', name, 3, 1.5, True, None)\n", {"bob"});
    CHECK(t.stdout_lines == std::vector<std::string>{"hi bob 3 1.5 True None"});
    CHECK(run("print()\n").stdout_lines == std::vector<std::string>{""});
}

TEST_CASE("float formatting")
{
    CHECK(eval_print("1.5") == "1.5");
    CHECK(eval_print("4.0") == "4.0");
    CHECK(eval_print("8 / 2") == "4.0");
    CHECK(eval_print("1 / 3") == "0.3333333333333333");
    CHECK(eval_print("0.1 + 0.2") == "0.30000000000000004");
    CHECK(eval_print("1e16") == "1e+16");
    CHECK(eval_print("1e-5") == "1e-05");
    CHECK(eval_print("123456789.0") == "123456789.0");
    CHECK(eval_print("-0.0") == "-0.0");
    CHECK(eval_print("float('inf')") == "inf");
}

TEST_CASE("division semantics")
{
    CHECK(eval_print("7 / 2") == "3.5");
    CHECK(eval_print("7 // 2") == "3");
    CHECK(eval_print("-7 // 2") == "-4");
    CHECK(eval_print("7 // -2") == "-4");
    CHECK(eval_print("-7 % 3") == "2");
    CHECK(eval_print("7 % -3") == "-2");
    CHECK(eval_print("7.5 // 2") == "3.0");
    CHECK(eval_print("-7.5 % 2") == "0.5");

    ExecTrace zero = run("x = 0\ny = 1\ny = 5 / x\n");
    CHECK(fault_kind(zero) == FaultKind::ZeroDivisionFault);
    CHECK(zero.fault()->line == 3);
    CHECK(zero.fault()->exception_name == "ZeroDivisionError");
    CHECK(fault_kind(run("x = 5 // 0\n")) == FaultKind::ZeroDivisionFault);
    CHECK(fault_kind(run("x = 5 % 0.0\n")) == FaultKind::ZeroDivisionFault);
    CHECK(fault_kind(run("x = 5.0\nx /= 0\n")) == FaultKind::ZeroDivisionFault);
}

TEST_CASE("conversions")
{
    CHECK(eval_print("int('42')") == "42");
    CHECK(eval_print("int(' -7 ')") == "-7");
    CHECK(eval_print("int(3.9)") == "3");
    CHECK(eval_print("int(-3.9)") == "-3");
    CHECK(eval_print("float('3')") == "3.0");
    CHECK(eval_print("float(' 2.5 ')") == "2.5");
    CHECK(eval_print("float('1e3')") == "1000.0");
    CHECK(eval_print("str(2.0) + str(3)") == "2.03");
    CHECK(eval_print("int(True)") == "1");

    ExecTrace bad_int = run("x = int('3.5')\n");
    CHECK(fault_kind(bad_int) == FaultKind::ValueErrorFault);
    CHECK(bad_int.fault()->exception_name == "ValueError");
    CHECK(fault_kind(run("x = float('abc')\n")) == FaultKind::ValueErrorFault);
    CHECK(fault_kind(run("x = float('')\n")) == FaultKind::ValueErrorFault);
    CHECK(fault_kind(run("x = float('xy z')\n")) == FaultKind::ValueErrorFault);
    CHECK(fault_kind(run("x = int('')\n")) == FaultKind::ValueErrorFault);
}

TEST_CASE("text parsing follows the source language")
{
    CHECK(parse_float_text("1_000.5") == 1000.5);
    CHECK(parse_float_text("-5") == -5.0);
    CHECK(parse_float_text(".5") == 0.5);
    CHECK(parse_float_text("5.") == 5.0);
    CHECK(std::isinf(*parse_float_text("-Infinity")));
    CHECK(std::isnan(*parse_float_text("nan")));
    CHECK_FALSE(parse_float_text("1__0").has_value());
    CHECK_FALSE(parse_float_text("_1").has_value());
    CHECK_FALSE(parse_float_text("0x10").has_value());
    CHECK_FALSE(parse_float_text("1.2.3").has_value());
    CHECK_FALSE(parse_float_text("").has_value());
    CHECK(parse_int_text("+12") == 12);
    CHECK(parse_int_text("007") == 7);
    CHECK_FALSE(parse_int_text("1.0").has_value());
    CHECK_FALSE(parse_int_text("1e3").has_value());
}

TEST_CASE("input exhaustion is EndOfInput")
{
    ExecTrace t = run("a = input()\nb = input()\n", {"only"});
    CHECK(fault_kind(t) == FaultKind::EndOfInput);
    CHECK(t.fault()->line == 2);
    CHECK(t.fault()->exception_name == "EOFError");
}

TEST_CASE("runtime faults")
{
    CHECK(fault_kind(run("print(missing)\n")) == FaultKind::NameFault);
    CHECK(fault_kind(run("x = 'a' + 1\n")) == FaultKind::TypeFault);
    CHECK(fault_kind(run("x = 'ab' * 3\n")) == FaultKind::TypeFault);
    CHECK(fault_kind(run("for i in range(2.0):\n    pass\n")) == FaultKind::TypeFault);
    CHECK(fault_kind(run("x = [1]\ny = x[3]\n")) == FaultKind::IndexFault);
    CHECK(fault_kind(run("x = 5\nx.append(1)\n")) == FaultKind::TypeFault);
    CHECK(fault_kind(run("def f(n):\n    return f(n + 1)\nf(0)\n")) == FaultKind::RecursionFault);
    CHECK(fault_kind(run("x = 9223372036854775807\nx += 1\n")) == FaultKind::OverflowFault);
    CHECK(fault_kind(run("def f():\n    y = x\n    x = 1\nx = 2\nf()\n")) == FaultKind::NameFault);
}

TEST_CASE("step limit stops infinite loops")
{
    ExecTrace t = run("while True:\n    pass\n", {}, 1000);
    CHECK(fault_kind(t) == FaultKind::StepLimitExceeded);
    CHECK(t.steps_used <= 1000);
    CHECK(t.fault()->exception_name.empty());

    // The step limit cannot be caught.
    ExecTrace caught = run("try:\n    while True:\n        pass\nexcept:\n    print('no')\n", {}, 500);
    CHECK(fault_kind(caught) == FaultKind::StepLimitExceeded);
    CHECK(caught.stdout_lines.empty());
}

TEST_CASE("F1 without a sentinel hits the step limit")
{
    std::vector<std::string> inputs(50, "1");
    ExecTrace t = execute(parse_source(qlc::testing::f1_source()), IoScript{inputs}, 100);
    CHECK(fault_kind(t) == FaultKind::StepLimitExceeded);
}

TEST_CASE("handler matching")
{
    SUBCASE("bare except")
    {
        ExecTrace t = run("try:\n    x = 1 / 0\nexcept:\n    print('caught')\n");
        CHECK(t.stdout_lines == std::vector<std::string>{"caught"});
        CHECK(handles(t) == std::vector<HandleEvent>{{3, "ZeroDivisionError"}});
    }
    SUBCASE("second handler")
    {
        ExecTrace t = run("try:\n    x = int('a')\nexcept ZeroDivisionError:\n    print(1)\nexcept ValueError:\n"
                          "    print(2)\n");
        CHECK(t.stdout_lines == std::vector<std::string>{"2"});
        CHECK(handles(t) == std::vector<HandleEvent>{{5, "ValueError"}});
    }
    SUBCASE("tuple and binding")
    {
        ExecTrace t = run("try:\n    x = float('q')\nexcept (TypeError, ValueError) as e:\n    print(e)\n");
        CHECK(t.stdout_lines == std::vector<std::string>{"could not convert string to float: 'q'"});
    }
    SUBCASE("hierarchy")
    {
        CHECK(handler_catches({}, "ValueError"));
        CHECK(handler_catches({"Exception"}, "ZeroDivisionError"));
        CHECK(handler_catches({"ArithmeticError"}, "ZeroDivisionError"));
        CHECK(handler_catches({"LookupError"}, "IndexError"));
        CHECK(handler_catches({"Exception"}, "EOFError"));
        CHECK_FALSE(handler_catches({"ValueError"}, "ZeroDivisionError"));
        CHECK_FALSE(handler_catches({"TypeError"}, "ValueError"));
    }
    SUBCASE("uncaught propagates out of nested try")
    {
        ExecTrace t = run("try:\n    try:\n        x = 1 / 0\n    except ValueError:\n        pass\nexcept "
                          "ZeroDivisionError:\n    print('outer')\n");
        CHECK(t.stdout_lines == std::vector<std::string>{"outer"});
        CHECK(handles(t) == std::vector<HandleEvent>{{6, "ZeroDivisionError"}});
    }
    SUBCASE("raise inside a called function is handled by the caller")
    {
        ExecTrace t = run("def f(s):\n    return float(s)\ntry:\n    f('x')\nexcept ValueError:\n    print('ok')\n");
        CHECK(raises(t) == std::vector<RaiseEvent>{{2, "ValueError"}});
        CHECK(handles(t) == std::vector<HandleEvent>{{5, "ValueError"}});
    }
}

TEST_CASE("every handle follows a matching raise")
{
    for (const auto& path : qlc::testing::corpus_files()) {
        qlc::lang::Ast ast = parse_source(qlc::testing::read_text(path));
        for (const auto& script : qlc::testing::oracle::fuzz_scripts(2)) {
            ExecTrace t = execute(ast, IoScript{script}, 20'000);
            std::optional<RaiseEvent> pending;
            for (const TraceEvent& e : t.events) {
                if (const auto* r = std::get_if<RaiseEvent>(&e)) {
                    pending = *r;
                } else if (const auto* h = std::get_if<HandleEvent>(&e)) {
                    REQUIRE(pending.has_value());
                    CHECK(h->exception_name == pending->exception_name);
                    CHECK(h->handler_line > pending->line - 100);
                    pending.reset();
                }
            }
        }
    }
}

TEST_CASE("lists")
{
    ExecTrace t = run("xs = []\nxs.append(3)\nxs.append(4)\nxs[0] = 1\nprint(xs, len(xs), xs[-1], sum(xs))\n");
    CHECK(t.stdout_lines == std::vector<std::string>{"[1, 4] 2 4 5"});
    ExecTrace alias = run("a = [1]\nb = a\nb.append(2)\nprint(a)\n");
    CHECK(alias.stdout_lines == std::vector<std::string>{"[1, 2]"});
    CHECK(eval_print("['a', 1.0, None]") == "['a', 1.0, None]");
    CHECK(eval_print("[1] + [2]") == "[1, 2]");
    CHECK(eval_print("[1, 2] == [1, 2]") == "True");
}

TEST_CASE("builtins")
{
    CHECK(eval_print("abs(-3)") == "3");
    CHECK(eval_print("abs(-2.5)") == "2.5");
    CHECK(eval_print("round(2.5)") == "2");
    CHECK(eval_print("round(3.5)") == "4");
    CHECK(eval_print("round(2.675, 2)") == "2.67");
    CHECK(eval_print("len('abc')") == "3");
    CHECK(eval_print("min(3, 1, 2)") == "1");
    CHECK(eval_print("max([3, 1, 2])") == "3");
    CHECK(eval_print("sum([1, 2.5])") == "3.5");
    CHECK(eval_print("round(-0.125, 2)") == "-0.12");
    CHECK(eval_print("round(1234.5, -2)") == "1200.0");
    // range() produces a list in this language subset.
    CHECK(eval_print("range(3)") == "[0, 1, 2]");
    ExecTrace t = run("for i in range(1, 7, 2):\n    print(i)\n");
    CHECK(t.stdout_lines == std::vector<std::string>{"1", "3", "5"});
}

TEST_CASE("comparisons and boolean logic")
{
    CHECK(eval_print("1 == 1.0") == "True");
    CHECK(eval_print("'-999' == -999") == "False");
    CHECK(eval_print("'a' < 'b'") == "True");
    CHECK(eval_print("0 or 'x'") == "x");
    CHECK(eval_print("1 and 0") == "0");
    CHECK(eval_print("not ''") == "True");
    CHECK(fault_kind(run("x = 'a' < 1\n")) == FaultKind::TypeFault);
    // Short circuit: the division never runs.
    CHECK(eval_print("False and 1 / 0") == "False");
}

TEST_CASE("scoping")
{
    ExecTrace t = run("x = 1\ndef f():\n    x = 2\n    return x\nprint(f(), x)\n");
    CHECK(t.stdout_lines == std::vector<std::string>{"2 1"});
    ExecTrace global_read = run("k = 10\ndef f():\n    return k + 1\nprint(f())\n");
    CHECK(global_read.stdout_lines == std::vector<std::string>{"11"});
    ExecTrace recursion = run("def fact(n):\n    if n <= 1:\n        return 1\n    return n * fact(n - 1)\n"
                              "print(fact(10))\n");
    CHECK(recursion.stdout_lines == std::vector<std::string>{"3628800"});
}

TEST_CASE("execution is deterministic")
{
    qlc::lang::Ast ast = parse_source(qlc::testing::f1_source());
    for (const auto& script : qlc::testing::oracle::fuzz_scripts(2)) {
        CHECK(execute(ast, IoScript{script}) == execute(ast, IoScript{script}));
    }
}

TEST_CASE("module name")
{
    ExecTrace t = run("print(__name__)\n");
    CHECK(t.stdout_lines == std::vector<std::string>{"__main__"});
}
