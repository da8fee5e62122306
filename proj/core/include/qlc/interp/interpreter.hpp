#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qlc/common/error.hpp"
#include "qlc/interp/value.hpp"
#include "qlc/lang/ast.hpp"

namespace qlc::interp {

// Lines handed to successive input() calls.
struct IoScript {
    std::vector<std::string> input_lines;
};

enum class FaultKind {
    ValueErrorFault,
    ZeroDivisionFault,
    EndOfInput,
    NameFault,
    TypeFault,
    IndexFault,
    RecursionFault,
    OverflowFault,
    StepLimitExceeded,
};

std::string_view to_string(FaultKind kind);

// How an execution ended abnormally. `exception_name` is the source-language
// exception (ValueError, EOFError, ...); empty for StepLimitExceeded.
struct RuntimeFault {
    FaultKind kind = FaultKind::TypeFault;
    int line = 0;
    std::string exception_name;
    std::string message;

    std::string describe() const;
    bool operator==(const RuntimeFault&) const = default;
};

struct RaiseEvent {
    int line = 0;
    std::string exception_name;
    bool operator==(const RaiseEvent&) const = default;
};

struct HandleEvent {
    int handler_line = 0;
    std::string exception_name;
    bool operator==(const HandleEvent&) const = default;
};

// A call of a function defined in the program.
struct CallEvent {
    std::string function_name;
    int line = 0;
    bool operator==(const CallEvent&) const = default;
};

using TraceEvent = std::variant<RaiseEvent, HandleEvent, CallEvent>;

struct ExecTrace {
    std::vector<std::string> stdout_lines;
    std::vector<TraceEvent> events;
    std::variant<Value, RuntimeFault> result;
    std::int64_t steps_used = 0;

    const RuntimeFault* fault() const { return std::get_if<RuntimeFault>(&result); }
    const Value* value() const { return std::get_if<Value>(&result); }
    bool operator==(const ExecTrace&) const = default;
};

class UnknownFunction : public Error {
public:
    explicit UnknownFunction(const std::string& name)
        : Error("program does not define a function named '" + name + "'")
    {
    }
};

inline constexpr std::int64_t kDefaultStepLimit = 100'000;
inline constexpr int kMaxCallDepth = 1000;

// Runs the program as a main module (`__name__ == "__main__"`). Every
// executed statement costs one step. The result is None unless a fault ends
// the run.
ExecTrace execute(const lang::Ast& ast, const IoScript& io,
                  std::int64_t step_limit = kDefaultStepLimit);

// Loads the program as an imported module (top-level statements run with
// `__name__ == "solution"`, so a main guard is skipped), then calls the
// named top-level function. The result is its return value.
// Throws UnknownFunction if no top-level def has that name.
ExecTrace call_function(const lang::Ast& ast, std::string_view name, std::vector<Value> args,
                        const IoScript& io, std::int64_t step_limit = kDefaultStepLimit);

// Whether an `except` clause naming `filter_names` (empty = bare) catches
// `exception_name`, including the built-in class hierarchy
// (Exception, ArithmeticError, LookupError, ...).
bool handler_catches(const std::vector<std::string>& filter_names, std::string_view exception_name);

// Parses text the way the source language's float() does; nullopt if
// it would raise ValueError.
std::optional<double> parse_float_text(std::string_view text);
// Parses text the way int() does (base 10).
std::optional<std::int64_t> parse_int_text(std::string_view text);

} // namespace qlc::interp
