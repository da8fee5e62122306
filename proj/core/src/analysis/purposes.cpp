#include "qlc/analysis/purposes.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "qlc/analysis/builtins.hpp"

namespace qlc::analysis {

using namespace qlc::lang;

namespace {

const Expr* first_call(const Expr& root, std::string_view name)
{
    const Expr* found = nullptr;
    walk_expr(root, [&](const Expr& e) {
        const Call* c = e.as<Call>();
        if (found == nullptr && c != nullptr && std::get<Name>(c->callee->node).id == name) {
            found = &e;
        }
    });
    return found;
}

bool is_zero(const Expr& e)
{
    if (const IntLit* i = e.as<IntLit>()) {
        return i->value == 0;
    }
    if (const FloatLit* f = e.as<FloatLit>()) {
        return f->value == 0.0;
    }
    return false;
}

std::optional<double> numeric_literal(const Expr& e)
{
    if (const IntLit* i = e.as<IntLit>()) {
        return static_cast<double>(i->value);
    }
    if (const FloatLit* f = e.as<FloatLit>()) {
        return f->value;
    }
    if (const UnaryOp* u = e.as<UnaryOp>(); u != nullptr && u->op == UnaryOperator::Neg) {
        if (auto v = numeric_literal(*u->operand)) {
            return -*v;
        }
    }
    return std::nullopt;
}

CompareOperator mirrored(CompareOperator op)
{
    switch (op) {
    case CompareOperator::Lt: return CompareOperator::Gt;
    case CompareOperator::LtE: return CompareOperator::GtE;
    case CompareOperator::Gt: return CompareOperator::Lt;
    case CompareOperator::GtE: return CompareOperator::LtE;
    default: return op;
    }
}

// A comparison of some subject against a literal, normalized so the subject
// is on the left.
struct Normalized {
    const Expr* subject;
    CompareOperator op;
    const Expr* literal;
};

template <typename IsLiteral>
std::optional<Normalized> normalize(const Expr& cond, IsLiteral is_literal)
{
    const Compare* c = cond.as<Compare>();
    if (c == nullptr) {
        return std::nullopt;
    }
    if (is_literal(*c->rhs) && !is_literal(*c->lhs)) {
        return Normalized{&*c->lhs, c->op, &*c->rhs};
    }
    if (is_literal(*c->lhs) && !is_literal(*c->rhs)) {
        return Normalized{&*c->rhs, mirrored(c->op), &*c->lhs};
    }
    return std::nullopt;
}

// The operands of a chain of `and`, or the condition itself.
std::vector<const Expr*> conjuncts(const Expr& cond)
{
    if (const BoolOp* b = cond.as<BoolOp>(); b != nullptr && b->op == BoolOperator::And) {
        auto out = conjuncts(*b->lhs);
        auto rest = conjuncts(*b->rhs);
        out.insert(out.end(), rest.begin(), rest.end());
        return out;
    }
    return {&cond};
}

// Pre-order walk of a block without entering nested function bodies.
template <typename Fn>
void walk_executed(const Block& block, Fn&& fn)
{
    walk_stmts(block, [&](const Stmt& s) {
        if (s.is<FuncDef>()) {
            return false;
        }
        fn(s);
        return true;
    });
}

bool block_exits(const Block& block)
{
    bool found = false;
    walk_executed(block, [&](const Stmt& s) {
        found = found || s.is<Break>() || s.is<Return>() || s.is<Continue>();
    });
    return found;
}

bool block_ends_loop_or_function(const Block& block)
{
    bool found = false;
    walk_executed(block, [&](const Stmt& s) { found = found || s.is<Break>() || s.is<Return>(); });
    return found;
}

bool block_continues(const Block& block)
{
    bool found = false;
    walk_executed(block, [&](const Stmt& s) { found = found || s.is<Continue>(); });
    return found;
}

bool divides_by(const Block& block, const Expr& denominator)
{
    bool found = false;
    walk_executed(block, [&](const Stmt& s) {
        if (const AugAssign* a = s.as<AugAssign>()) {
            if (a->op == AugOperator::Div && same_shape(a->value, denominator)) {
                found = true;
            }
        }
        for (const Expr* root : statement_exprs(s)) {
            walk_expr(*root, [&](const Expr& e) {
                const BinOp* op = e.as<BinOp>();
                if (op != nullptr &&
                    (op->op == BinaryOperator::Div || op->op == BinaryOperator::FloorDiv ||
                     op->op == BinaryOperator::Mod) &&
                    same_shape(*op->rhs, denominator)) {
                    found = true;
                }
            });
        }
    });
    return found;
}

// Adds to a running total or list: `t += x`, `t = t + x`, `xs.append(x)`.
bool accumulates(const Block& block)
{
    bool found = false;
    walk_executed(block, [&](const Stmt& s) {
        if (const AugAssign* a = s.as<AugAssign>()) {
            found = found || a->op == AugOperator::Add;
        } else if (const Assign* a = s.as<Assign>()) {
            const BinOp* op = a->value.as<BinOp>();
            if (op != nullptr && op->op == BinaryOperator::Add &&
                (same_shape(*op->lhs, a->target) || same_shape(*op->rhs, a->target))) {
                found = true;
            }
        } else if (const ExprStmt* e = s.as<ExprStmt>()) {
            found = found || e->expr.is<MethodCall>();
        }
    });
    return found;
}

// A branch of a conditional statement: the condition and what it guards.
struct Branch {
    int line;
    const Expr* cond;
    const Block* body;
    // Statements that run only when the condition is false and control
    // stays in the enclosing block: the else part and later siblings.
    std::vector<const Block*> otherwise;
    std::vector<const Stmt*> later_siblings;
    bool is_loop;
};

class Classifier {
public:
    Classifier(const Ast& ast, const PurposeOptions& options) : options_(options)
    {
        collect_input_derived(ast);
        visit_block(ast.root.body);
    }

    std::vector<PurposeFinding> results()
    {
        std::vector<PurposeFinding> out;
        for (const auto& [line, found] : by_line_) {
            std::set<Purpose> distinct;
            for (const PurposeFinding& f : found) {
                distinct.insert(f.purpose);
            }
            if (distinct.size() == 1) {
                out.push_back(found.front());
            }
        }
        return out;
    }

private:
    void add(int line, Purpose purpose, const SourceSpan& evidence)
    {
        by_line_[line].push_back(PurposeFinding{line, purpose, evidence});
    }

    void collect_input_derived(const Ast& ast)
    {
        walk_stmts(ast.root.body, [&](const Stmt& s) {
            const Assign* a = s.as<Assign>();
            if (a == nullptr || !a->target.is<Name>()) {
                return;
            }
            const Expr& rhs = a->value;
            bool derived = false;
            if (const Call* c = rhs.as<Call>()) {
                const std::string& callee = std::get<Name>(c->callee->node).id;
                if (callee == "input") {
                    derived = true;
                } else if (is_conversion_builtin(callee) && c->args.size() == 1) {
                    const Call* inner = c->args[0].as<Call>();
                    derived = inner != nullptr && std::get<Name>(inner->callee->node).id == "input";
                }
            }
            if (derived) {
                input_derived_.insert(a->target.as<Name>()->id);
            }
        });
    }

    bool is_sentinel(const Expr& e) const
    {
        if (auto v = numeric_literal(e)) {
            return *v == static_cast<double>(options_.sentinel);
        }
        if (const StringLit* s = e.as<StringLit>()) {
            return s->value == std::to_string(options_.sentinel);
        }
        return false;
    }

    bool is_input_derived(const Expr& e) const
    {
        const Name* n = e.as<Name>();
        return n != nullptr && input_derived_.count(n->id) > 0;
    }

    void visit_block(const Block& block)
    {
        for (std::size_t i = 0; i < block.size(); ++i) {
            const Stmt& s = block[i];
            std::vector<const Stmt*> later;
            for (std::size_t j = i + 1; j < block.size(); ++j) {
                later.push_back(&block[j]);
            }
            simple_statement(s);
            std::visit(Overloaded{
                           [&](const FuncDef& n) { visit_block(n.body); },
                           [&](const If& n) {
                               std::vector<const Block*> rest;
                               for (const ElifClause& e : n.elifs) {
                                   rest.push_back(&e.body);
                               }
                               if (n.orelse) {
                                   rest.push_back(&*n.orelse);
                               }
                               classify_branch(Branch{s.line(), &n.cond, &n.body, rest, later, false});
                               for (std::size_t k = 0; k < n.elifs.size(); ++k) {
                                   std::vector<const Block*> after(rest.begin() + static_cast<long>(k) + 1,
                                                                   rest.end());
                                   classify_branch(Branch{n.elifs[k].span.start_line, &n.elifs[k].cond,
                                                          &n.elifs[k].body, after, later, false});
                               }
                               visit_block(n.body);
                               for (const ElifClause& e : n.elifs) {
                                   visit_block(e.body);
                               }
                               if (n.orelse) {
                                   visit_block(*n.orelse);
                               }
                           },
                           [&](const While& n) {
                               classify_branch(Branch{s.line(), &n.cond, &n.body, {}, later, true});
                               visit_block(n.body);
                           },
                           [&](const For& n) { visit_block(n.body); },
                           [&](const Try& n) {
                               visit_block(n.body);
                               for (const Handler& h : n.handlers) {
                                   visit_block(h.body);
                               }
                           },
                           [](const auto&) {},
                       },
                       s.node);
        }
    }

    void simple_statement(const Stmt& s)
    {
        if (!(s.is<Assign>() || s.is<AugAssign>() || s.is<ExprStmt>() || s.is<Return>())) {
            return;
        }
        for (const Expr* root : statement_exprs(s)) {
            if (const Expr* call = first_call(*root, "input")) {
                add(s.line(), Purpose::AcceptsNewData, call->span);
                return;
            }
        }
    }

    bool later_divides_by(const Branch& b, const Expr& denominator) const
    {
        for (const Block* other : b.otherwise) {
            if (divides_by(*other, denominator)) {
                return true;
            }
        }
        Block later;
        for (const Stmt* s : b.later_siblings) {
            later.push_back(*s);
        }
        return divides_by(later, denominator);
    }

    void classify_branch(const Branch& b)
    {
        for (const Expr* part : conjuncts(*b.cond)) {
            zero_guard(b, *part);
            negative_filter(b, *part);
        }
        sentinel(b);
    }

    void zero_guard(const Branch& b, const Expr& cond)
    {
        auto n = normalize(cond, is_zero);
        if (!n) {
            return;
        }
        bool protects = false;
        if (n->op == CompareOperator::Gt || n->op == CompareOperator::NotEq) {
            protects = divides_by(*b.body, *n->subject);
        } else if (n->op == CompareOperator::Eq && !b.is_loop) {
            protects = block_exits(*b.body) && later_divides_by(b, *n->subject);
        }
        if (protects) {
            add(b.line, Purpose::GuardsDivisionByZero, cond.span);
        }
    }

    void negative_filter(const Branch& b, const Expr& cond)
    {
        if (b.is_loop) {
            return;
        }
        auto n = normalize(cond, is_zero);
        if (!n) {
            return;
        }
        bool skips = n->op == CompareOperator::Lt && block_continues(*b.body);
        bool guards = n->op == CompareOperator::GtE && accumulates(*b.body);
        if (skips || guards) {
            add(b.line, Purpose::IgnoresNegativeInput, cond.span);
        }
    }

    void sentinel(const Branch& b)
    {
        auto matches = [&](CompareOperator expected) {
            auto n = normalize(*b.cond, [&](const Expr& e) { return is_sentinel(e); });
            return n && n->op == expected && is_input_derived(*n->subject);
        };
        if (b.is_loop) {
            if (matches(CompareOperator::NotEq)) {
                add(b.line, Purpose::SentinelTermination, b.cond->span);
            }
            return;
        }
        if (matches(CompareOperator::Eq) && block_ends_loop_or_function(*b.body)) {
            add(b.line, Purpose::SentinelTermination, b.cond->span);
        }
    }

    const PurposeOptions& options_;
    std::set<std::string> input_derived_;
    std::map<int, std::vector<PurposeFinding>> by_line_;
};

} // namespace

std::string_view to_string(Purpose purpose)
{
    switch (purpose) {
    case Purpose::AcceptsNewData: return "AcceptsNewData";
    case Purpose::GuardsDivisionByZero: return "GuardsDivisionByZero";
    case Purpose::SentinelTermination: return "SentinelTermination";
    case Purpose::IgnoresNegativeInput: return "IgnoresNegativeInput";
    }
    return "?";
}

std::optional<Purpose> purpose_from_string(std::string_view text)
{
    for (Purpose p : kAllPurposes) {
        if (to_string(p) == text) {
            return p;
        }
    }
    return std::nullopt;
}

std::string_view purpose_label(Purpose purpose)
{
    switch (purpose) {
    case Purpose::AcceptsNewData: return "Accepts new data";
    case Purpose::GuardsDivisionByZero: return "Guards against division by zero";
    case Purpose::SentinelTermination: return "Is a condition for ending the program";
    case Purpose::IgnoresNegativeInput: return "Ignores negative input";
    }
    return "?";
}

std::vector<PurposeFinding> classify_purposes(const Ast& ast, const PurposeOptions& options)
{
    return Classifier(ast, options).results();
}

} // namespace qlc::analysis
