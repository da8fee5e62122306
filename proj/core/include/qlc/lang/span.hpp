#pragma once

#include <string>

namespace qlc::lang {

// Source region; lines and columns are 1-based, the end column is exclusive.
// Columns count bytes of the UTF-8 source.
struct SourceSpan {
    int start_line = 1;
    int start_col = 1;
    int end_line = 1;
    int end_col = 2;

    bool contains(const SourceSpan& inner) const;
    bool operator==(const SourceSpan&) const = default;
};

// Smallest span covering both arguments.
SourceSpan cover(const SourceSpan& first, const SourceSpan& last);

// "line:col"
std::string to_string(const SourceSpan& span);

} // namespace qlc::lang
