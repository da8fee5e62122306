#include "qlc/analysis/report_json.hpp"

#include <sstream>

#include "qlc/lang/ast_json.hpp"

namespace qlc::analysis {

using nlohmann::json;

namespace {

json lines_of(const std::vector<lang::SourceSpan>& spans)
{
    json out = json::array();
    for (const lang::SourceSpan& s : spans) {
        if (out.empty() || out.back().get<int>() != s.start_line) {
            out.push_back(s.start_line);
        }
    }
    return out;
}

json name_uses(const std::vector<NameUse>& uses)
{
    json out = json::array();
    for (const NameUse& u : uses) {
        out.push_back(json{{"name", u.name}, {"lines", lines_of(u.sites)}});
    }
    return out;
}

std::string join_names(const std::vector<std::string>& names)
{
    std::string out;
    for (const std::string& n : names) {
        out += out.empty() ? n : ", " + n;
    }
    return out.empty() ? "-" : out;
}

std::vector<std::string> names_of(const std::vector<NameUse>& uses)
{
    std::vector<std::string> out;
    for (const NameUse& u : uses) {
        out.push_back(u.name);
    }
    return out;
}

} // namespace

json identifiers_to_json(const IdentifierTable& table)
{
    json vars = json::array();
    for (const Variable& v : table.variables) {
        vars.push_back(json{{"name", v.name}, {"kind", to_string(v.kind)}, {"lines", lines_of(v.definition_sites)}});
    }
    return json{{"variables", vars},
                {"builtinsUsed", name_uses(table.builtins_used)},
                {"keywordsUsed", name_uses(table.keywords_used)},
                {"functionsDefined", name_uses(table.functions_defined)}};
}

json except_flows_to_json(const std::vector<ExceptFlow>& flows)
{
    json out = json::array();
    for (const ExceptFlow& f : flows) {
        json sites = json::array();
        for (const RaisingSite& s : f.raising_sites) {
            sites.push_back(json{{"line", s.line},
                                 {"exceptionName", s.exception_name},
                                 {"reason", to_string(s.reason)},
                                 {"span", lang::span_to_json(s.span)}});
        }
        out.push_back(json{{"tryLine", f.try_line},
                           {"handlerLine", f.handler_line},
                           {"caught", f.caught},
                           {"raisingSites", sites}});
    }
    return out;
}

json purposes_to_json(const std::vector<PurposeFinding>& findings)
{
    json out = json::array();
    for (const PurposeFinding& p : findings) {
        out.push_back(json{{"line", p.line},
                           {"purpose", to_string(p.purpose)},
                           {"label", purpose_label(p.purpose)},
                           {"evidence", lang::span_to_json(p.evidence)}});
    }
    return out;
}

std::string identifiers_to_text(const IdentifierTable& table)
{
    std::ostringstream out;
    out << "variables: " << join_names(table.variable_names()) << "\n";
    out << "builtins:  " << join_names(table.builtin_names()) << "\n";
    out << "keywords:  " << join_names(table.keyword_names()) << "\n";
    out << "functions: " << join_names(names_of(table.functions_defined)) << "\n";
    return out.str();
}

std::string except_flows_to_text(const std::vector<ExceptFlow>& flows)
{
    std::ostringstream out;
    if (flows.empty()) {
        out << "no try statements\n";
    }
    for (const ExceptFlow& f : flows) {
        out << "try line " << f.try_line << ", handler line " << f.handler_line << " catches "
            << (f.caught.empty() ? std::string("everything") : join_names(f.caught)) << "\n";
        if (f.raising_sites.empty()) {
            out << "  no raising sites\n";
        }
        for (const RaisingSite& s : f.raising_sites) {
            out << "  line " << s.line << ": " << s.exception_name << " (" << to_string(s.reason) << ")\n";
        }
    }
    return out.str();
}

std::string purposes_to_text(const std::vector<PurposeFinding>& findings)
{
    std::ostringstream out;
    if (findings.empty()) {
        out << "no line purposes found\n";
    }
    for (const PurposeFinding& p : findings) {
        out << "line " << p.line << ": " << purpose_label(p.purpose) << "\n";
    }
    return out.str();
}

} // namespace qlc::analysis
