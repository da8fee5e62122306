#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qlc/analysis/except_flow.hpp"
#include "qlc/analysis/identifiers.hpp"
#include "qlc/analysis/purposes.hpp"
#include "qlc/common/error.hpp"
#include "qlc/lang/ast.hpp"

namespace qlc::gen {

enum class QlcType { VariableNames, ExceptSource, LinePurpose };

// "Q1_VariableNames", "Q2_ExceptSource", "Q3_LinePurpose"
std::string_view to_string(QlcType type);
std::optional<QlcType> qlc_type_from_string(std::string_view text);
// Short form used in answer logs: "Q1", "Q2", "Q3".
std::string_view short_name(QlcType type);
std::optional<QlcType> qlc_type_from_short_name(std::string_view text);

// Block-model cell the question type exercises, e.g. "atom–text".
std::string_view block_model_tag(QlcType type);

enum class OptionCategory {
    Variable,
    BuiltinUsed,
    ReservedWord,
    UnusedWord,
    RaisingLine,
    TryLine,
    OutsideBeforeTry,
    PurposeLabel,
};

std::string_view to_string(OptionCategory category);
std::optional<OptionCategory> option_category_from_string(std::string_view text);

struct AnswerOption {
    std::string id;
    std::string label;
    bool is_correct = false;
    OptionCategory category = OptionCategory::Variable;
    std::string explanation;
    bool operator==(const AnswerOption&) const = default;
};

struct Qlc {
    std::string id;
    QlcType type = QlcType::VariableNames;
    std::string prompt;
    std::vector<AnswerOption> options;
    bool multi_select = false;
    std::optional<int> target_line;
    // For line-purpose questions: the purpose of the target line.
    std::optional<analysis::Purpose> purpose;

    const AnswerOption* find_option(std::string_view option_id) const;
    std::vector<std::string> correct_option_ids() const;
    bool operator==(const Qlc&) const = default;
};

struct Questionnaire {
    std::string id;
    std::string source_hash;
    std::uint64_t seed = 0;
    std::vector<Qlc> questions;
    // Question types that could not be generated for this program.
    std::vector<std::string> omitted;

    const Qlc* find_question(std::string_view question_id) const;
    const Qlc* find_question(QlcType type) const;
    bool operator==(const Questionnaire&) const = default;
};

class GenerationError : public Error {
public:
    enum class Reason { Q1Impossible, Q3Impossible, NothingToAsk };

    GenerationError(Reason reason, const std::string& message) : Error(message), reason_(reason) {}
    Reason reason() const { return reason_; }

private:
    Reason reason_;
};

// Exact prompt text for a question type; `target_line` replaces X.
std::string render_prompt(QlcType type, std::optional<int> target_line);
inline std::string render_prompt(const Qlc& q) { return render_prompt(q.type, q.target_line); }

} // namespace qlc::gen
