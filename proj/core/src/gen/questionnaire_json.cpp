#include "qlc/gen/questionnaire_json.hpp"

#include "qlc/lang/ast_json.hpp"

namespace qlc::gen {

using nlohmann::json;

namespace {

json question_json(const Qlc& q, bool instructor)
{
    json options = json::array();
    for (const AnswerOption& o : q.options) {
        json opt{{"id", o.id}, {"label", o.label}};
        if (instructor) {
            opt["isCorrect"] = o.is_correct;
            opt["category"] = to_string(o.category);
            opt["explanation"] = o.explanation;
        }
        options.push_back(std::move(opt));
    }
    json out{{"id", q.id},
             {"type", to_string(q.type)},
             {"prompt", q.prompt},
             {"multiSelect", q.multi_select},
             {"options", std::move(options)}};
    if (instructor) {
        out["blockModelTag"] = block_model_tag(q.type);
        out["targetLine"] = q.target_line ? json(*q.target_line) : json(nullptr);
        out["purpose"] = q.purpose ? json(analysis::to_string(*q.purpose)) : json(nullptr);
    }
    return out;
}

template <typename T>
T required(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) {
        throw lang::SchemaError(std::string("questionnaire JSON: missing field '") + key + "'");
    }
    return j.at(key).get<T>();
}

} // namespace

json to_instructor_json(const Questionnaire& q)
{
    json questions = json::array();
    for (const Qlc& question : q.questions) {
        questions.push_back(question_json(question, true));
    }
    return json{{"id", q.id},
                {"sourceHash", q.source_hash},
                {"seed", q.seed},
                {"questions", std::move(questions)},
                {"omitted", q.omitted}};
}

json to_student_json(const Questionnaire& q)
{
    json questions = json::array();
    for (const Qlc& question : q.questions) {
        questions.push_back(question_json(question, false));
    }
    return json{{"id", q.id}, {"questions", std::move(questions)}};
}

Questionnaire questionnaire_from_json(const json& j)
{
    try {
        Questionnaire out;
        out.id = required<std::string>(j, "id");
        out.source_hash = required<std::string>(j, "sourceHash");
        out.seed = required<std::uint64_t>(j, "seed");
        if (j.contains("omitted")) {
            out.omitted = j.at("omitted").get<std::vector<std::string>>();
        }
        for (const json& jq : required<json>(j, "questions")) {
            Qlc q;
            q.id = required<std::string>(jq, "id");
            auto type = qlc_type_from_string(required<std::string>(jq, "type"));
            if (!type) {
                throw lang::SchemaError("questionnaire JSON: unknown question type");
            }
            q.type = *type;
            q.prompt = required<std::string>(jq, "prompt");
            q.multi_select = required<bool>(jq, "multiSelect");
            if (jq.contains("targetLine") && !jq.at("targetLine").is_null()) {
                q.target_line = jq.at("targetLine").get<int>();
            }
            if (jq.contains("purpose") && !jq.at("purpose").is_null()) {
                q.purpose = analysis::purpose_from_string(jq.at("purpose").get<std::string>());
            }
            for (const json& jo : required<json>(jq, "options")) {
                AnswerOption o;
                o.id = required<std::string>(jo, "id");
                o.label = required<std::string>(jo, "label");
                o.is_correct = required<bool>(jo, "isCorrect");
                auto category = option_category_from_string(required<std::string>(jo, "category"));
                if (!category) {
                    throw lang::SchemaError("questionnaire JSON: unknown option category");
                }
                o.category = *category;
                o.explanation = required<std::string>(jo, "explanation");
                q.options.push_back(std::move(o));
            }
            out.questions.push_back(std::move(q));
        }
        return out;
    } catch (const json::exception& e) {
        throw lang::SchemaError(std::string("questionnaire JSON: ") + e.what());
    }
}

} // namespace qlc::gen
