#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>

namespace qlc {

// 64-bit FNV-1a. Stable across platforms and runs; used for content hashes
// and seed derivation, never for security.
std::uint64_t fnv1a64(std::string_view data, std::uint64_t basis = 0xcbf29ce484222325ULL);

// Hashes the parts with a separator byte between them, so ("ab","c") and
// ("a","bc") differ.
std::uint64_t hash_parts(std::initializer_list<std::string_view> parts);

std::string to_hex(std::uint64_t value);

// Content hash of a program text, rendered as 16 hex digits.
std::string source_hash(std::string_view source);

} // namespace qlc
