#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace qlc::interp {

class Value;
using List = std::vector<Value>;

struct NoneValue {
    bool operator==(const NoneValue&) const = default;
};

// A runtime value of the accepted language. Lists are shared, mutable
// objects: copying a Value that holds a list aliases the same list, as
// assignment does in the source language.
class Value {
public:
    using Storage =
        std::variant<NoneValue, bool, std::int64_t, double, std::string, std::shared_ptr<List>>;

    Value() = default;
    Value(NoneValue) {}
    Value(bool b) : data_(b) {}
    Value(std::int64_t i) : data_(i) {}
    Value(int i) : data_(static_cast<std::int64_t>(i)) {}
    Value(double d) : data_(d) {}
    Value(std::string s) : data_(std::move(s)) {}
    Value(const char* s) : data_(std::string(s)) {}

    static Value new_list(List items = {});

    bool is_none() const { return std::holds_alternative<NoneValue>(data_); }
    bool is_bool() const { return std::holds_alternative<bool>(data_); }
    bool is_int() const { return std::holds_alternative<std::int64_t>(data_); }
    bool is_float() const { return std::holds_alternative<double>(data_); }
    bool is_str() const { return std::holds_alternative<std::string>(data_); }
    bool is_list() const { return std::holds_alternative<std::shared_ptr<List>>(data_); }
    // int, float or bool
    bool is_number() const { return is_int() || is_float() || is_bool(); }

    bool as_bool() const { return std::get<bool>(data_); }
    std::int64_t as_int() const { return std::get<std::int64_t>(data_); }
    double as_float() const { return std::get<double>(data_); }
    const std::string& as_str() const { return std::get<std::string>(data_); }
    List& as_list() const { return *std::get<std::shared_ptr<List>>(data_); }

    // Integer view of int or bool.
    std::int64_t to_integer() const { return is_bool() ? (as_bool() ? 1 : 0) : as_int(); }
    // Float view of any number.
    double to_double() const;

    const Storage& storage() const { return data_; }

    // "int", "float", "str", "bool", "NoneType", "list"
    std::string type_name() const;

    bool truthy() const;

    // The text print() and str() produce.
    std::string str() const;
    // The text shown for the value inside a list display.
    std::string repr() const;

    // Deep equality with the source language's == semantics (1 == 1.0 holds).
    friend bool operator==(const Value& a, const Value& b);

private:
    Storage data_;
};

// Shortest round-tripping decimal form; integral values keep ".0".
std::string format_float(double value);

} // namespace qlc::interp
