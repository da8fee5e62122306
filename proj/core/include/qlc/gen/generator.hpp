#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "qlc/gen/questionnaire.hpp"

namespace qlc::gen {

inline constexpr std::size_t kVariableDistractors = 4;

// Words offered as "unused" distractors, minus any the program mentions.
const std::vector<std::string>& unused_word_pool();

// Builds the questionnaire for one program. The analysis products must come
// from `ast`; `source` is the exact submitted text (hashed into the result).
// Q1 and Q3 are omitted (and listed in `omitted`) when impossible; throws
// GenerationError if neither can be asked.
Questionnaire generate_questionnaire(const lang::Ast& ast, std::string_view source,
                                     const analysis::IdentifierTable& table,
                                     const std::vector<analysis::ExceptFlow>& flows,
                                     const std::vector<analysis::PurposeFinding>& purposes,
                                     std::uint64_t seed);

// Runs the three analyses and generates.
Questionnaire generate_for_source(const lang::Ast& ast, std::string_view source, std::uint64_t seed,
                                  const analysis::PurposeOptions& options = {});

// The except flow a Q2 question would target: the first flow, by position,
// that has a raising site. nullptr if none.
const analysis::ExceptFlow* q2_target(const std::vector<analysis::ExceptFlow>& flows);

std::string questionnaire_id(std::string_view source_hash, std::uint64_t seed);

} // namespace qlc::gen
