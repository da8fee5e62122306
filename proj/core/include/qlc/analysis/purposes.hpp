#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "qlc/lang/ast.hpp"

namespace qlc::analysis {

enum class Purpose { AcceptsNewData, GuardsDivisionByZero, SentinelTermination, IgnoresNegativeInput };

inline constexpr Purpose kAllPurposes[] = {Purpose::AcceptsNewData, Purpose::GuardsDivisionByZero,
                                           Purpose::SentinelTermination,
                                           Purpose::IgnoresNegativeInput};

// "AcceptsNewData", ...
std::string_view to_string(Purpose purpose);
std::optional<Purpose> purpose_from_string(std::string_view text);

// The option text shown to students, e.g. "Accepts new data".
std::string_view purpose_label(Purpose purpose);

struct PurposeFinding {
    int line = 0;
    Purpose purpose = Purpose::AcceptsNewData;
    lang::SourceSpan evidence;
    bool operator==(const PurposeFinding&) const = default;
};

struct PurposeOptions {
    // Input value that ends the program; matched as a number or as its text.
    std::int64_t sentinel = -999;
};

// Findings sorted by line, at most one per line.
std::vector<PurposeFinding> classify_purposes(const lang::Ast& ast, const PurposeOptions& options = {});

} // namespace qlc::analysis
