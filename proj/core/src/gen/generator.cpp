#include "qlc/gen/generator.hpp"

#include <algorithm>
#include <set>

#include "qlc/common/hash.hpp"
#include "qlc/common/random.hpp"
#include "qlc/gen/explanations.hpp"

namespace qlc::gen {

using namespace qlc::analysis;
using namespace qlc::lang;

namespace {

std::string line_label(int line)
{
    return "line " + std::to_string(line);
}

// Shuffles, then numbers the options by their final position.
void finalize_options(Qlc& q, SeededRng& rng, const ExplanationContext& context)
{
    rng.shuffle(q.options);
    for (std::size_t i = 0; i < q.options.size(); ++i) {
        q.options[i].id = q.id + "." + std::to_string(i + 1);
    }
    for (AnswerOption& o : q.options) {
        o.explanation = explanation_for(o, q, context);
    }
}

std::optional<Qlc> variable_question(const IdentifierTable& table, const std::set<std::string>& names,
                                     SeededRng& rng, const ExplanationContext& context)
{
    if (table.variables.empty()) {
        return std::nullopt;
    }
    Qlc q;
    q.id = "q1";
    q.type = QlcType::VariableNames;
    q.multi_select = true;
    q.prompt = render_prompt(q.type, std::nullopt);
    for (const std::string& v : table.variable_names()) {
        q.options.push_back(AnswerOption{"", v, true, OptionCategory::Variable, ""});
    }

    std::vector<std::string> builtins = rng.sample(table.builtin_names(), 2);
    std::vector<std::string> keywords = rng.sample(table.keyword_names(), 2);
    std::vector<std::string> pool;
    for (const std::string& w : unused_word_pool()) {
        if (!names.count(w)) {
            pool.push_back(w);
        }
    }
    std::size_t wanted = kVariableDistractors - builtins.size() - keywords.size();
    std::vector<std::string> unused = rng.sample(pool, wanted);

    for (const std::string& b : builtins) {
        q.options.push_back(AnswerOption{"", b, false, OptionCategory::BuiltinUsed, ""});
    }
    for (const std::string& k : keywords) {
        q.options.push_back(AnswerOption{"", k, false, OptionCategory::ReservedWord, ""});
    }
    for (const std::string& u : unused) {
        q.options.push_back(AnswerOption{"", u, false, OptionCategory::UnusedWord, ""});
    }
    finalize_options(q, rng, context);
    return q;
}

std::optional<Qlc> except_question(const Ast& ast, const std::vector<ExceptFlow>& flows, SeededRng& rng,
                                   const ExplanationContext& context)
{
    const ExceptFlow* flow = q2_target(flows);
    if (flow == nullptr) {
        return std::nullopt;
    }
    Qlc q;
    q.id = "q2";
    q.type = QlcType::ExceptSource;
    q.target_line = flow->handler_line;
    q.prompt = render_prompt(q.type, q.target_line);

    int raising_line = flow->raising_sites.front().line;
    q.options.push_back(AnswerOption{"", line_label(raising_line), true, OptionCategory::RaisingLine, ""});
    q.options.push_back(AnswerOption{"", line_label(flow->try_line), false, OptionCategory::TryLine, ""});

    std::set<int> before;
    walk_stmts(ast.root.body, [&](const Stmt& s) {
        if (s.line() < flow->try_line) {
            before.insert(s.line());
        }
    });
    if (!before.empty()) {
        std::vector<int> lines(before.begin(), before.end());
        int pick = lines[rng.below(lines.size())];
        q.options.push_back(AnswerOption{"", line_label(pick), false, OptionCategory::OutsideBeforeTry, ""});
    }
    finalize_options(q, rng, context);
    return q;
}

std::optional<Qlc> purpose_question(const std::vector<PurposeFinding>& purposes, SeededRng& rng,
                                    const ExplanationContext& context)
{
    if (purposes.empty()) {
        return std::nullopt;
    }
    const PurposeFinding& target = purposes[rng.below(purposes.size())];
    Qlc q;
    q.id = "q3";
    q.type = QlcType::LinePurpose;
    q.target_line = target.line;
    q.purpose = target.purpose;
    q.prompt = render_prompt(q.type, q.target_line);
    for (Purpose p : kAllPurposes) {
        q.options.push_back(AnswerOption{"", std::string(purpose_label(p)), p == target.purpose,
                                         OptionCategory::PurposeLabel, ""});
    }
    finalize_options(q, rng, context);
    return q;
}

} // namespace

const std::vector<std::string>& unused_word_pool()
{
    static const std::vector<std::string> pool{"n", "total", "count", "result", "temp", "data", "other"};
    return pool;
}

const ExceptFlow* q2_target(const std::vector<ExceptFlow>& flows)
{
    const ExceptFlow* best = nullptr;
    for (const ExceptFlow& f : flows) {
        if (f.raising_sites.empty()) {
            continue;
        }
        if (best == nullptr || std::tie(f.try_line, f.handler_line) < std::tie(best->try_line, best->handler_line)) {
            best = &f;
        }
    }
    return best;
}

std::string questionnaire_id(std::string_view source_hash, std::uint64_t seed)
{
    return "qn-" + to_hex(hash_parts({source_hash, std::to_string(seed)}));
}

Questionnaire generate_questionnaire(const Ast& ast, std::string_view source, const IdentifierTable& table,
                                     const std::vector<ExceptFlow>& flows,
                                     const std::vector<PurposeFinding>& purposes, std::uint64_t seed)
{
    ExplanationContext context{table, flows, purposes};
    SeededRng rng(seed);

    Questionnaire out;
    out.source_hash = source_hash(source);
    out.seed = seed;
    out.id = questionnaire_id(out.source_hash, seed);

    std::optional<Qlc> q1 = variable_question(table, names_in_program(ast), rng, context);
    std::optional<Qlc> q2 = except_question(ast, flows, rng, context);
    std::optional<Qlc> q3 = purpose_question(purposes, rng, context);
    if (!q1 && !q3) {
        throw GenerationError(GenerationError::Reason::NothingToAsk,
                              "the program has no variables and no line with a recognizable purpose");
    }
    for (auto* q : {&q1, &q2, &q3}) {
        if (*q) {
            out.questions.push_back(std::move(**q));
        }
    }
    if (!q1) {
        out.omitted.push_back("Q1Impossible");
    }
    if (!q2 && !flows.empty()) {
        out.omitted.push_back("Q2NoRaisingSite");
    }
    if (!q3) {
        out.omitted.push_back("Q3Impossible");
    }
    return out;
}

Questionnaire generate_for_source(const Ast& ast, std::string_view source, std::uint64_t seed,
                                  const PurposeOptions& options)
{
    return generate_questionnaire(ast, source, classify_identifiers(ast), except_sources(ast),
                                  classify_purposes(ast, options), seed);
}

} // namespace qlc::gen
