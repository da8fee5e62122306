#include "qlc/interp/trace_json.hpp"

#include <cmath>

#include "qlc/common/overloaded.hpp"

namespace qlc::interp {

using nlohmann::json;

json value_to_json(const Value& value)
{
    json out;
    out["repr"] = value.repr();
    std::visit(Overloaded{
                   [&](const NoneValue&) {
                       out["type"] = "none";
                       out["value"] = nullptr;
                   },
                   [&](bool b) {
                       out["type"] = "bool";
                       out["value"] = b;
                   },
                   [&](std::int64_t i) {
                       out["type"] = "int";
                       out["value"] = i;
                   },
                   [&](double d) {
                       out["type"] = "float";
                       out["value"] = std::isfinite(d) ? json(d) : json(nullptr);
                   },
                   [&](const std::string& s) {
                       out["type"] = "str";
                       out["value"] = s;
                   },
                   [&](const std::shared_ptr<List>& items) {
                       out["type"] = "list";
                       json elements = json::array();
                       for (const Value& v : *items) {
                           elements.push_back(value_to_json(v));
                       }
                       out["value"] = std::move(elements);
                   },
               },
               value.storage());
    return out;
}

json fault_to_json(const RuntimeFault& fault)
{
    return json{{"kind", to_string(fault.kind)},
                {"line", fault.line},
                {"exceptionName", fault.exception_name},
                {"message", fault.message}};
}

json trace_to_json(const ExecTrace& trace)
{
    json events = json::array();
    for (const TraceEvent& event : trace.events) {
        events.push_back(std::visit(
            Overloaded{
                [](const RaiseEvent& e) {
                    return json{{"type", "raise"}, {"line", e.line}, {"exceptionName", e.exception_name}};
                },
                [](const HandleEvent& e) {
                    return json{{"type", "handle"},
                                {"handlerLine", e.handler_line},
                                {"exceptionName", e.exception_name}};
                },
                [](const CallEvent& e) {
                    return json{{"type", "call"}, {"functionName", e.function_name}, {"line", e.line}};
                },
            },
            event));
    }
    json result;
    if (const RuntimeFault* fault = trace.fault()) {
        result = json{{"fault", fault_to_json(*fault)}};
    } else {
        result = json{{"value", value_to_json(*trace.value())}};
    }
    return json{{"stdout", trace.stdout_lines},
                {"events", std::move(events)},
                {"result", std::move(result)},
                {"stepsUsed", trace.steps_used}};
}

} // namespace qlc::interp
