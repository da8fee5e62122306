#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qlc/gen/questionnaire.hpp"
#include "qlc/stats/mann_whitney.hpp"

namespace qlc::stats {

struct AnswerRow {
    std::string session_id;
    gen::QlcType type = gen::QlcType::VariableNames;
    bool correct = false;
    std::vector<std::string> error_categories;
    std::optional<double> course_points;
    // Sub-variant of the question, e.g. the purpose asked about in Q3.
    std::optional<std::string> variant;
    bool operator==(const AnswerRow&) const = default;
};

// One row per (session, question type); a session's rows agree on course
// points when present.
struct AnswerLog {
    std::vector<AnswerRow> rows;

    // Throws MalformedLog if an invariant is broken.
    void validate() const;
};

struct SuccessRate {
    int correct = 0;
    int total = 0;

    double rate() const { return total == 0 ? 0.0 : static_cast<double>(correct) / total; }
    std::string display() const { return display_percent(rate()); }
};

// Keyed by question type. Throws EmptyLog.
std::map<gen::QlcType, SuccessRate> success_rates(const AnswerLog& log);
// Rates per variant of one question type (rows without a variant skipped).
std::map<std::string, SuccessRate> variant_success_rates(const AnswerLog& log, gen::QlcType type);
// How often each error category occurs among the type's rows.
std::map<std::string, int> error_category_counts(const AnswerLog& log, gen::QlcType type);

struct QuestionComparison {
    gen::QlcType type = gen::QlcType::VariableNames;
    GroupComparison comparison;
    double alpha = 0.05;
    bool significant = false;
};

// T = rows answered correctly, F = incorrectly, using course points. Rows
// without course points are ignored. `tests` is the number of question
// types compared, for the Bonferroni correction. Throws DegenerateGroups.
QuestionComparison compare_by_question(const AnswerLog& log, gen::QlcType type, int tests = 3,
                                       double alpha = 0.05);

// Header-driven CSV with columns sessionId, qlcType, correct, categories
// (';'-separated), coursePoints (may be empty) and optionally variant.
AnswerLog parse_answer_log_csv(std::string_view text);
std::string answer_log_to_csv(const AnswerLog& log);

// "sessionId,points" rows under a header line.
std::map<std::string, double> parse_course_points_csv(std::string_view text);
void attach_course_points(AnswerLog& log, const std::map<std::string, double>& points);

// Splits one CSV record; double quotes may wrap fields and "" escapes a quote.
std::vector<std::string> split_csv_line(std::string_view line);

} // namespace qlc::stats
