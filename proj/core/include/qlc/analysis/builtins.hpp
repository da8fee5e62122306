#pragma once

#include <span>
#include <string_view>

namespace qlc::analysis {

// Built-in functions the analyses know by name: input, print, int, float,
// str, len, range, abs, round.
std::span<const std::string_view> known_builtins();
bool is_known_builtin(std::string_view name);

// int() and float().
bool is_conversion_builtin(std::string_view name);

} // namespace qlc::analysis
