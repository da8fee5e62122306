#include "qlc/stats/answer_log.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>
#include <sstream>

namespace qlc::stats {

namespace {

[[noreturn]] void malformed(const std::string& message)
{
    throw StatsError(StatsError::Code::MalformedLog, message);
}

std::string trim(std::string_view s)
{
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    std::size_t e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> lines_of(std::string_view text)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        std::string line = trim(text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start));
        if (!line.empty()) {
            out.push_back(std::move(line));
        }
        if (nl == std::string_view::npos) {
            break;
        }
        start = nl + 1;
    }
    return out;
}

std::optional<double> parse_number(const std::string& text)
{
    if (text.empty()) {
        return std::nullopt;
    }
    char* end = nullptr;
    double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || !std::isfinite(v)) {
        return std::nullopt;
    }
    return v;
}

bool parse_bool(const std::string& text, std::size_t line_no)
{
    std::string t = text;
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (t == "true" || t == "1" || t == "t" || t == "yes") {
        return true;
    }
    if (t == "false" || t == "0" || t == "f" || t == "no") {
        return false;
    }
    malformed("line " + std::to_string(line_no) + ": '" + text + "' is not a boolean");
}

std::string format_points(double v)
{
    std::ostringstream out;
    out.precision(15);
    out << v;
    return out.str();
}

} // namespace

void AnswerLog::validate() const
{
    std::set<std::pair<std::string, gen::QlcType>> seen;
    std::map<std::string, double> points;
    for (const AnswerRow& r : rows) {
        if (!seen.insert({r.session_id, r.type}).second) {
            malformed("session '" + r.session_id + "' has two rows for " + std::string(gen::short_name(r.type)));
        }
        if (r.course_points) {
            auto [it, inserted] = points.emplace(r.session_id, *r.course_points);
            if (!inserted && it->second != *r.course_points) {
                malformed("session '" + r.session_id + "' has conflicting course points");
            }
        }
    }
}

std::map<gen::QlcType, SuccessRate> success_rates(const AnswerLog& log)
{
    if (log.rows.empty()) {
        throw StatsError(StatsError::Code::EmptyLog, "the answer log is empty");
    }
    std::map<gen::QlcType, SuccessRate> out;
    for (const AnswerRow& r : log.rows) {
        SuccessRate& s = out[r.type];
        ++s.total;
        s.correct += r.correct ? 1 : 0;
    }
    return out;
}

std::map<std::string, SuccessRate> variant_success_rates(const AnswerLog& log, gen::QlcType type)
{
    std::map<std::string, SuccessRate> out;
    for (const AnswerRow& r : log.rows) {
        if (r.type != type || !r.variant) {
            continue;
        }
        SuccessRate& s = out[*r.variant];
        ++s.total;
        s.correct += r.correct ? 1 : 0;
    }
    return out;
}

std::map<std::string, int> error_category_counts(const AnswerLog& log, gen::QlcType type)
{
    std::map<std::string, int> out;
    for (const AnswerRow& r : log.rows) {
        if (r.type != type) {
            continue;
        }
        for (const std::string& c : r.error_categories) {
            ++out[c];
        }
    }
    return out;
}

QuestionComparison compare_by_question(const AnswerLog& log, gen::QlcType type, int tests, double alpha)
{
    std::vector<double> t;
    std::vector<double> f;
    for (const AnswerRow& r : log.rows) {
        if (r.type != type || !r.course_points) {
            continue;
        }
        (r.correct ? t : f).push_back(*r.course_points);
    }
    if (t.empty() || f.empty()) {
        throw StatsError(StatsError::Code::DegenerateGroups,
                         "need course points for both correct and incorrect answers to " +
                             std::string(gen::short_name(type)));
    }
    QuestionComparison out;
    out.type = type;
    out.comparison = mann_whitney_u(t, f);
    out.alpha = bonferroni_alpha(alpha, tests);
    out.significant = out.comparison.p_two_sided < out.alpha;
    return out;
}

std::vector<std::string> split_csv_line(std::string_view line)
{
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                current += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                current += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(trim(current));
            current.clear();
        } else {
            current += c;
        }
    }
    if (quoted) {
        malformed("unterminated quoted field");
    }
    fields.push_back(trim(current));
    return fields;
}

AnswerLog parse_answer_log_csv(std::string_view text)
{
    std::vector<std::string> lines = lines_of(text);
    if (lines.empty()) {
        malformed("missing header line");
    }
    std::vector<std::string> header = split_csv_line(lines[0]);
    auto column = [&](const char* name, bool required) -> std::optional<std::size_t> {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) {
            if (required) {
                malformed(std::string("missing column '") + name + "'");
            }
            return std::nullopt;
        }
        return static_cast<std::size_t>(it - header.begin());
    };
    std::size_t c_session = *column("sessionId", true);
    std::size_t c_type = *column("qlcType", true);
    std::size_t c_correct = *column("correct", true);
    auto c_categories = column("categories", false);
    auto c_points = column("coursePoints", false);
    auto c_variant = column("variant", false);

    AnswerLog log;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::size_t line_no = i + 1;
        std::vector<std::string> f = split_csv_line(lines[i]);
        if (f.size() != header.size()) {
            malformed("line " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) +
                      " fields, found " + std::to_string(f.size()));
        }
        AnswerRow row;
        row.session_id = f[c_session];
        if (row.session_id.empty()) {
            malformed("line " + std::to_string(line_no) + ": empty sessionId");
        }
        auto type = gen::qlc_type_from_short_name(f[c_type]);
        if (!type) {
            malformed("line " + std::to_string(line_no) + ": unknown question type '" + f[c_type] + "'");
        }
        row.type = *type;
        row.correct = parse_bool(f[c_correct], line_no);
        if (c_categories && !f[*c_categories].empty()) {
            std::string_view cats = f[*c_categories];
            std::size_t start = 0;
            while (start <= cats.size()) {
                std::size_t semi = cats.find(';', start);
                std::string cat = trim(cats.substr(start, semi == std::string_view::npos ? std::string_view::npos : semi - start));
                if (!cat.empty()) {
                    row.error_categories.push_back(cat);
                }
                if (semi == std::string_view::npos) {
                    break;
                }
                start = semi + 1;
            }
        }
        if (c_points && !f[*c_points].empty()) {
            row.course_points = parse_number(f[*c_points]);
            if (!row.course_points) {
                malformed("line " + std::to_string(line_no) + ": course points '" + f[*c_points] + "' is not a number");
            }
        }
        if (c_variant && !f[*c_variant].empty()) {
            row.variant = f[*c_variant];
        }
        log.rows.push_back(std::move(row));
    }
    log.validate();
    return log;
}

std::string answer_log_to_csv(const AnswerLog& log)
{
    std::string out = "sessionId,qlcType,correct,categories,coursePoints,variant\n";
    for (const AnswerRow& r : log.rows) {
        std::string cats;
        for (const std::string& c : r.error_categories) {
            cats += (cats.empty() ? "" : ";") + c;
        }
        out += r.session_id + "," + std::string(gen::short_name(r.type)) + "," + (r.correct ? "true" : "false") +
               "," + cats + "," + (r.course_points ? format_points(*r.course_points) : std::string()) + "," +
               r.variant.value_or("") + "\n";
    }
    return out;
}

std::map<std::string, double> parse_course_points_csv(std::string_view text)
{
    std::vector<std::string> lines = lines_of(text);
    if (lines.empty()) {
        malformed("missing header line");
    }
    std::vector<std::string> header = split_csv_line(lines[0]);
    if (header.size() != 2) {
        malformed("expected the header 'sessionId,points'");
    }
    std::map<std::string, double> out;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::vector<std::string> f = split_csv_line(lines[i]);
        std::string where = "line " + std::to_string(i + 1);
        if (f.size() != 2 || f[0].empty()) {
            malformed(where + ": expected 'sessionId,points'");
        }
        auto points = parse_number(f[1]);
        if (!points) {
            malformed(where + ": points '" + f[1] + "' is not a number");
        }
        out[f[0]] = *points;
    }
    return out;
}

void attach_course_points(AnswerLog& log, const std::map<std::string, double>& points)
{
    for (AnswerRow& r : log.rows) {
        auto it = points.find(r.session_id);
        if (it != points.end()) {
            r.course_points = it->second;
        }
    }
}

} // namespace qlc::stats
