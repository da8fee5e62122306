#include "qlc/analysis/identifiers.hpp"

#include <algorithm>
#include <map>

#include "qlc/analysis/builtins.hpp"

namespace qlc::analysis {

using namespace qlc::lang;

namespace {

using SiteMap = std::map<std::string, std::vector<SourceSpan>>;

std::vector<NameUse> to_uses(const SiteMap& sites)
{
    std::vector<NameUse> out;
    for (const auto& [name, spans] : sites) {
        out.push_back(NameUse{name, spans});
    }
    return out;
}

std::vector<std::string> names_of(const std::vector<NameUse>& uses)
{
    std::vector<std::string> out;
    for (const NameUse& u : uses) {
        out.push_back(u.name);
    }
    return out;
}

struct Collector {
    std::map<std::string, Variable> variables;
    SiteMap builtin_calls;
    SiteMap keywords;
    SiteMap functions;

    void define(const std::string& name, VariableKind kind, const SourceSpan& site)
    {
        auto [it, inserted] = variables.try_emplace(name, Variable{name, kind, {}});
        it->second.definition_sites.push_back(site);
    }

    void define_target(const Expr& target, VariableKind kind)
    {
        if (const Name* n = target.as<Name>()) {
            define(n->id, kind, target.span);
        }
    }

    void keyword(const char* word, const SourceSpan& site) { keywords[word].push_back(site); }

    void expression(const Expr& root)
    {
        walk_expr(root, [&](const Expr& e) {
            if (const Call* call = e.as<Call>()) {
                const std::string& callee = std::get<Name>(call->callee->node).id;
                if (is_known_builtin(callee)) {
                    builtin_calls[callee].push_back(call->callee->span);
                }
            } else if (const BoolLit* b = e.as<BoolLit>()) {
                keyword(b->value ? "True" : "False", e.span);
            } else if (e.is<NoneLit>()) {
                keyword("None", e.span);
            } else if (const BoolOp* op = e.as<BoolOp>()) {
                keyword(op->op == BoolOperator::And ? "and" : "or", e.span);
            } else if (const UnaryOp* op = e.as<UnaryOp>()) {
                if (op->op == UnaryOperator::Not) {
                    keyword("not", e.span);
                }
            }
        });
    }

    void statement(const Stmt& s)
    {
        for (const Expr* e : statement_exprs(s)) {
            expression(*e);
        }
        std::visit(Overloaded{
                       [&](const FuncDef& n) {
                           keyword("def", s.span);
                           functions[n.name].push_back(s.span);
                           for (const Param& p : n.params) {
                               define(p.name, VariableKind::Parameter, p.span);
                           }
                       },
                       [&](const Assign& n) { define_target(n.target, VariableKind::Assigned); },
                       [&](const AugAssign& n) { define_target(n.target, VariableKind::Assigned); },
                       [&](const If& n) {
                           keyword("if", s.span);
                           for (const ElifClause& e : n.elifs) {
                               keyword("elif", e.span);
                           }
                           if (n.orelse) {
                               keyword("else", s.span);
                           }
                       },
                       [&](const While&) { keyword("while", s.span); },
                       [&](const For& n) {
                           keyword("for", s.span);
                           keyword("in", s.span);
                           define_target(n.target, VariableKind::ForTarget);
                       },
                       [&](const Try& n) {
                           keyword("try", s.span);
                           for (const Handler& h : n.handlers) {
                               keyword("except", h.span);
                               if (h.bound_name) {
                                   keyword("as", h.span);
                                   define(*h.bound_name, VariableKind::ExceptBinding, h.span);
                               }
                           }
                       },
                       [&](const Return&) { keyword("return", s.span); },
                       [&](const Break&) { keyword("break", s.span); },
                       [&](const Continue&) { keyword("continue", s.span); },
                       [&](const Pass&) { keyword("pass", s.span); },
                       [](const ExprStmt&) {},
                   },
                   s.node);
    }
};

} // namespace

std::string_view to_string(VariableKind kind)
{
    switch (kind) {
    case VariableKind::Assigned: return "assigned";
    case VariableKind::Parameter: return "parameter";
    case VariableKind::ForTarget: return "forTarget";
    case VariableKind::ExceptBinding: return "exceptBinding";
    }
    return "?";
}

bool IdentifierTable::is_variable(std::string_view name) const
{
    return std::any_of(variables.begin(), variables.end(),
                       [&](const Variable& v) { return v.name == name; });
}

std::vector<std::string> IdentifierTable::variable_names() const
{
    std::vector<std::string> out;
    for (const Variable& v : variables) {
        out.push_back(v.name);
    }
    return out;
}

std::vector<std::string> IdentifierTable::builtin_names() const
{
    return names_of(builtins_used);
}

std::vector<std::string> IdentifierTable::keyword_names() const
{
    return names_of(keywords_used);
}

IdentifierTable classify_identifiers(const Ast& ast)
{
    Collector c;
    walk_stmts(ast.root.body, [&](const Stmt& s) { c.statement(s); });

    IdentifierTable table;
    for (auto& [name, var] : c.variables) {
        // A def'd name is a function even if something also assigns it.
        if (!c.functions.count(name)) {
            table.variables.push_back(std::move(var));
        }
    }
    for (auto& [name, sites] : c.builtin_calls) {
        if (!c.variables.count(name) && !c.functions.count(name)) {
            table.builtins_used.push_back(NameUse{name, std::move(sites)});
        }
    }
    table.keywords_used = to_uses(c.keywords);
    table.functions_defined = to_uses(c.functions);
    return table;
}

std::set<std::string> names_in_program(const Ast& ast)
{
    std::set<std::string> names;
    walk_stmts(ast.root.body, [&](const Stmt& s) {
        for (const Expr* root : statement_exprs(s)) {
            walk_expr(*root, [&](const Expr& e) {
                if (const Name* n = e.as<Name>()) {
                    names.insert(n->id);
                } else if (const MethodCall* m = e.as<MethodCall>()) {
                    names.insert(m->method);
                }
            });
        }
        if (const FuncDef* f = s.as<FuncDef>()) {
            names.insert(f->name);
            for (const Param& p : f->params) {
                names.insert(p.name);
            }
        } else if (const Try* t = s.as<Try>()) {
            for (const Handler& h : t->handlers) {
                names.insert(h.exception_names.begin(), h.exception_names.end());
                if (h.bound_name) {
                    names.insert(*h.bound_name);
                }
            }
        }
    });
    return names;
}

} // namespace qlc::analysis
