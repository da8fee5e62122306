#include <doctest.h>

#include "qlc/interp/trace_json.hpp"
#include "qlc/lang/parser.hpp"
#include "test_support.hpp"

using namespace qlc::interp;

TEST_CASE("trace JSON for F1 with a bad line")
{
    ExecTrace t = execute(qlc::lang::parse_source(qlc::testing::f1_source()), IoScript{{"abc", "-999"}});
    nlohmann::json j = trace_to_json(t);
    CHECK(j["stdout"] == nlohmann::json::array({"0"}));
    bool saw_raise = false;
    bool saw_handle = false;
    for (const auto& e : j["events"]) {
        if (e["type"] == "raise") {
            CHECK(e["line"] == 9);
            CHECK(e["exceptionName"] == "ValueError");
            saw_raise = true;
        } else if (e["type"] == "handle") {
            CHECK(e["handlerLine"] == 10);
            saw_handle = true;
        }
    }
    CHECK(saw_raise);
    CHECK(saw_handle);
    CHECK(j["result"]["value"]["type"] == "none");
    CHECK(j["stepsUsed"].get<int>() == t.steps_used);
}

TEST_CASE("trace JSON for a fault")
{
    ExecTrace t = execute(qlc::lang::parse_source("x = 1 / 0\n"), IoScript{});
    nlohmann::json j = trace_to_json(t);
    CHECK(j["result"]["fault"]["kind"] == "ZeroDivisionFault");
    CHECK(j["result"]["fault"]["line"] == 1);
    CHECK(j["result"]["fault"]["exceptionName"] == "ZeroDivisionError");
}

TEST_CASE("value JSON")
{
    CHECK(value_to_json(Value(1.5))["repr"] == "1.5");
    CHECK(value_to_json(Value(2))["type"] == "int");
    CHECK(value_to_json(Value("hi"))["repr"] == "'hi'");
    CHECK(value_to_json(Value::new_list({Value(1), Value("a")}))["repr"] == "[1, 'a']");
}
