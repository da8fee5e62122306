#include "qlc/interp/value.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>

namespace qlc::interp {

Value Value::new_list(List items)
{
    Value v;
    v.data_ = std::make_shared<List>(std::move(items));
    return v;
}

double Value::to_double() const
{
    if (is_float()) {
        return as_float();
    }
    return static_cast<double>(to_integer());
}

std::string Value::type_name() const
{
    static constexpr std::array<const char*, 6> names{"NoneType", "bool", "int", "float", "str", "list"};
    return names[data_.index()];
}

bool Value::truthy() const
{
    switch (data_.index()) {
    case 0: return false;
    case 1: return as_bool();
    case 2: return as_int() != 0;
    case 3: return as_float() != 0.0;
    case 4: return !as_str().empty();
    default: return !as_list().empty();
    }
}

std::string Value::str() const
{
    switch (data_.index()) {
    case 0: return "None";
    case 1: return as_bool() ? "True" : "False";
    case 2: return std::to_string(as_int());
    case 3: return format_float(as_float());
    case 4: return as_str();
    default: {
        std::string out = "[";
        const List& items = as_list();
        for (std::size_t i = 0; i < items.size(); ++i) {
            if (i > 0) {
                out += ", ";
            }
            out += items[i].repr();
        }
        return out + "]";
    }
    }
}

std::string Value::repr() const
{
    if (!is_str()) {
        return str();
    }
    const std::string& s = as_str();
    char quote = (s.find('\'') != std::string::npos && s.find('"') == std::string::npos) ? '"' : '\'';
    std::string out(1, quote);
    for (char c : s) {
        switch (c) {
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\\': out += "\\\\"; break;
        default:
            if (c == quote) {
                out += '\\';
            }
            out += c;
        }
    }
    out += quote;
    return out;
}

bool operator==(const Value& a, const Value& b)
{
    if (a.is_number() && b.is_number()) {
        if (a.is_float() || b.is_float()) {
            return a.to_double() == b.to_double();
        }
        return a.to_integer() == b.to_integer();
    }
    if (a.data_.index() != b.data_.index()) {
        return false;
    }
    if (a.is_list()) {
        return a.as_list() == b.as_list();
    }
    return a.data_ == b.data_;
}

std::string format_float(double value)
{
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    // Shortest round-trip digits in scientific form, then laid out the way
    // the source language's repr() does: fixed notation for exponents in
    // [-4, 16), scientific otherwise.
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                   std::chars_format::scientific);
    std::string sci(buf.data(), end);
    bool negative = sci.front() == '-';
    if (negative) {
        sci.erase(0, 1);
    }
    std::size_t e_pos = sci.find('e');
    std::string mantissa = sci.substr(0, e_pos);
    int exponent = std::atoi(sci.c_str() + e_pos + 1);
    std::string digits;
    for (char c : mantissa) {
        if (c != '.') {
            digits += c;
        }
    }

    std::string out;
    if (exponent >= -4 && exponent < 16) {
        if (exponent < 0) {
            out = "0." + std::string(static_cast<std::size_t>(-exponent - 1), '0') + digits;
        } else {
            std::size_t int_len = static_cast<std::size_t>(exponent) + 1;
            if (digits.size() <= int_len) {
                out = digits + std::string(int_len - digits.size(), '0') + ".0";
            } else {
                out = digits.substr(0, int_len) + "." + digits.substr(int_len);
            }
        }
    } else {
        out = digits.substr(0, 1);
        if (digits.size() > 1) {
            out += "." + digits.substr(1);
        }
        out += 'e';
        out += exponent < 0 ? '-' : '+';
        int mag = std::abs(exponent);
        if (mag < 10) {
            out += '0';
        }
        out += std::to_string(mag);
    }
    return negative ? "-" + out : out;
}

} // namespace qlc::interp
