#include "qlc/analysis/except_flow.hpp"

#include <algorithm>
#include <tuple>

#include "qlc/analysis/builtins.hpp"
#include "qlc/interp/interpreter.hpp"

namespace qlc::analysis {

using namespace qlc::lang;

namespace {

bool is_nonzero_literal(const Expr& e)
{
    if (const IntLit* i = e.as<IntLit>()) {
        return i->value != 0;
    }
    if (const FloatLit* f = e.as<FloatLit>()) {
        return f->value != 0.0;
    }
    if (const UnaryOp* u = e.as<UnaryOp>()) {
        return u->op == UnaryOperator::Neg && is_nonzero_literal(*u->operand);
    }
    return false;
}

bool is_numeric_literal(const Expr& e)
{
    if (e.is<IntLit>() || e.is<FloatLit>()) {
        return true;
    }
    const UnaryOp* u = e.as<UnaryOp>();
    return u != nullptr && u->op == UnaryOperator::Neg && is_numeric_literal(*u->operand);
}

bool is_division(BinaryOperator op)
{
    return op == BinaryOperator::Div || op == BinaryOperator::FloorDiv || op == BinaryOperator::Mod;
}

std::vector<RaisingSite> statement_sites(const Stmt& s)
{
    std::vector<RaisingSite> out;
    for (const Expr* e : statement_exprs(s)) {
        auto found = raising_sites_in(*e);
        out.insert(out.end(), found.begin(), found.end());
    }
    if (const AugAssign* aug = s.as<AugAssign>()) {
        if (aug->op == AugOperator::Div && !is_nonzero_literal(aug->value)) {
            out.push_back(RaisingSite{s.line(), "ZeroDivisionError", RaiseReason::DivisionOp, s.span});
        }
    }
    return out;
}

bool caught_by_any(const std::vector<Handler>& handlers, const std::string& exception_name)
{
    return std::any_of(handlers.begin(), handlers.end(), [&](const Handler& h) {
        return interp::handler_catches(h.exception_names, exception_name);
    });
}

// Sites whose exception can leave `block`. Nested function bodies are
// definitions, not executed code, so they contribute nothing.
std::vector<RaisingSite> escaping_sites(const Block& block)
{
    std::vector<RaisingSite> out;
    for (const Stmt& s : block) {
        auto own = statement_sites(s);
        out.insert(out.end(), own.begin(), own.end());
        std::visit(Overloaded{
                       [&](const If& n) {
                           auto body = escaping_sites(n.body);
                           out.insert(out.end(), body.begin(), body.end());
                           for (const ElifClause& e : n.elifs) {
                               auto inner = escaping_sites(e.body);
                               out.insert(out.end(), inner.begin(), inner.end());
                           }
                           if (n.orelse) {
                               auto inner = escaping_sites(*n.orelse);
                               out.insert(out.end(), inner.begin(), inner.end());
                           }
                       },
                       [&](const While& n) {
                           auto inner = escaping_sites(n.body);
                           out.insert(out.end(), inner.begin(), inner.end());
                       },
                       [&](const For& n) {
                           auto inner = escaping_sites(n.body);
                           out.insert(out.end(), inner.begin(), inner.end());
                       },
                       [&](const Try& n) {
                           for (RaisingSite& site : escaping_sites(n.body)) {
                               if (!caught_by_any(n.handlers, site.exception_name)) {
                                   out.push_back(std::move(site));
                               }
                           }
                           for (const Handler& h : n.handlers) {
                               auto inner = escaping_sites(h.body);
                               out.insert(out.end(), inner.begin(), inner.end());
                           }
                       },
                       [](const auto&) {},
                   },
                   s.node);
    }
    return out;
}

} // namespace

std::string_view to_string(RaiseReason reason)
{
    switch (reason) {
    case RaiseReason::ConversionCall: return "conversionCall";
    case RaiseReason::DivisionOp: return "divisionOp";
    case RaiseReason::InputCall: return "inputCall";
    }
    return "?";
}

std::vector<RaisingSite> raising_sites_in(const Expr& expr)
{
    std::vector<RaisingSite> out;
    walk_expr(expr, [&](const Expr& e) {
        int line = e.span.start_line;
        if (const Call* call = e.as<Call>()) {
            const std::string& callee = std::get<Name>(call->callee->node).id;
            if (callee == "input") {
                out.push_back(RaisingSite{line, "EOFError", RaiseReason::InputCall, e.span});
            } else if (is_conversion_builtin(callee) &&
                       !(call->args.size() == 1 && is_numeric_literal(call->args[0]))) {
                out.push_back(RaisingSite{line, "ValueError", RaiseReason::ConversionCall, e.span});
            }
        } else if (const BinOp* op = e.as<BinOp>()) {
            if (is_division(op->op) && !is_nonzero_literal(*op->rhs)) {
                out.push_back(RaisingSite{line, "ZeroDivisionError", RaiseReason::DivisionOp, e.span});
            }
        }
    });
    return out;
}

std::vector<ExceptFlow> except_sources(const Ast& ast)
{
    std::vector<ExceptFlow> flows;
    walk_stmts(ast.root.body, [&](const Stmt& s) {
        const Try* t = s.as<Try>();
        if (t == nullptr) {
            return;
        }
        std::vector<RaisingSite> sites = escaping_sites(t->body);
        std::sort(sites.begin(), sites.end(), [](const RaisingSite& a, const RaisingSite& b) {
            return std::tie(a.span.start_line, a.span.start_col, a.exception_name) <
                   std::tie(b.span.start_line, b.span.start_col, b.exception_name);
        });
        SourceSpan body_span = cover(t->body.front().span, t->body.back().span);
        for (std::size_t i = 0; i < t->handlers.size(); ++i) {
            const Handler& h = t->handlers[i];
            ExceptFlow flow{s.line(), h.span.start_line, h.exception_names, {}, s.span, body_span};
            for (const RaisingSite& site : sites) {
                bool earlier = std::any_of(t->handlers.begin(), t->handlers.begin() + static_cast<long>(i),
                                           [&](const Handler& prev) {
                                               return interp::handler_catches(prev.exception_names,
                                                                              site.exception_name);
                                           });
                if (!earlier && interp::handler_catches(h.exception_names, site.exception_name)) {
                    flow.raising_sites.push_back(site);
                }
            }
            flows.push_back(std::move(flow));
        }
    });
    return flows;
}

} // namespace qlc::analysis
