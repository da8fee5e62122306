#include "qlc/analysis/builtins.hpp"

#include <algorithm>
#include <array>

namespace qlc::analysis {

namespace {

constexpr std::array<std::string_view, 9> kBuiltins = {"input", "print", "int",   "float", "str",
                                                       "len",   "range", "abs",   "round"};

} // namespace

std::span<const std::string_view> known_builtins()
{
    return kBuiltins;
}

bool is_known_builtin(std::string_view name)
{
    return std::find(kBuiltins.begin(), kBuiltins.end(), name) != kBuiltins.end();
}

bool is_conversion_builtin(std::string_view name)
{
    return name == "int" || name == "float";
}

} // namespace qlc::analysis
