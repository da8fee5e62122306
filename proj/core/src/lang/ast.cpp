#include "qlc/lang/ast.hpp"

#include "qlc/lang/ast_json.hpp"

namespace qlc::lang {

bool SourceSpan::contains(const SourceSpan& inner) const
{
    auto before_or_at = [](int l1, int c1, int l2, int c2) {
        return l1 < l2 || (l1 == l2 && c1 <= c2);
    };
    return before_or_at(start_line, start_col, inner.start_line, inner.start_col) &&
           before_or_at(inner.end_line, inner.end_col, end_line, end_col);
}

SourceSpan cover(const SourceSpan& first, const SourceSpan& last)
{
    return {first.start_line, first.start_col, last.end_line, last.end_col};
}

std::string to_string(const SourceSpan& span)
{
    return std::to_string(span.start_line) + ":" + std::to_string(span.start_col);
}

bool operator==(const ListDisplay& a, const ListDisplay& b) { return a.elements == b.elements; }
bool operator==(const Subscript& a, const Subscript& b)
{
    return a.value == b.value && a.index == b.index;
}
bool operator==(const Call& a, const Call& b) { return a.callee == b.callee && a.args == b.args; }
bool operator==(const MethodCall& a, const MethodCall& b)
{
    return a.receiver == b.receiver && a.method == b.method && a.args == b.args;
}
bool operator==(const BinOp& a, const BinOp& b)
{
    return a.op == b.op && a.lhs == b.lhs && a.rhs == b.rhs;
}
bool operator==(const Compare& a, const Compare& b)
{
    return a.op == b.op && a.lhs == b.lhs && a.rhs == b.rhs;
}
bool operator==(const BoolOp& a, const BoolOp& b)
{
    return a.op == b.op && a.lhs == b.lhs && a.rhs == b.rhs;
}
bool operator==(const UnaryOp& a, const UnaryOp& b)
{
    return a.op == b.op && a.operand == b.operand;
}
bool operator==(const Expr& a, const Expr& b) { return a.span == b.span && a.node == b.node; }

bool operator==(const FuncDef& a, const FuncDef& b)
{
    return a.name == b.name && a.params == b.params && a.body == b.body;
}
bool operator==(const Assign& a, const Assign& b)
{
    return a.target == b.target && a.value == b.value;
}
bool operator==(const AugAssign& a, const AugAssign& b)
{
    return a.op == b.op && a.target == b.target && a.value == b.value;
}
bool operator==(const ExprStmt& a, const ExprStmt& b) { return a.expr == b.expr; }
bool operator==(const ElifClause& a, const ElifClause& b)
{
    return a.span == b.span && a.cond == b.cond && a.body == b.body;
}
bool operator==(const If& a, const If& b)
{
    return a.cond == b.cond && a.body == b.body && a.elifs == b.elifs && a.orelse == b.orelse;
}
bool operator==(const While& a, const While& b) { return a.cond == b.cond && a.body == b.body; }
bool operator==(const For& a, const For& b)
{
    return a.target == b.target && a.iterable == b.iterable && a.body == b.body;
}
bool operator==(const Handler& a, const Handler& b)
{
    return a.span == b.span && a.exception_names == b.exception_names &&
           a.bound_name == b.bound_name && a.body == b.body;
}
bool operator==(const Try& a, const Try& b) { return a.body == b.body && a.handlers == b.handlers; }
bool operator==(const Return& a, const Return& b) { return a.value == b.value; }
bool operator==(const Stmt& a, const Stmt& b) { return a.span == b.span && a.node == b.node; }
bool operator==(const Program& a, const Program& b) { return a.span == b.span && a.body == b.body; }

std::string_view node_kind(const Expr& expr)
{
    return std::visit(Overloaded{
                          [](const Name&) { return std::string_view("Name"); },
                          [](const IntLit&) { return std::string_view("IntLit"); },
                          [](const FloatLit&) { return std::string_view("FloatLit"); },
                          [](const StringLit&) { return std::string_view("StringLit"); },
                          [](const BoolLit&) { return std::string_view("BoolLit"); },
                          [](const NoneLit&) { return std::string_view("NoneLit"); },
                          [](const ListDisplay&) { return std::string_view("ListDisplay"); },
                          [](const Subscript&) { return std::string_view("Subscript"); },
                          [](const Call&) { return std::string_view("Call"); },
                          [](const MethodCall&) { return std::string_view("MethodCall"); },
                          [](const BinOp&) { return std::string_view("BinOp"); },
                          [](const Compare&) { return std::string_view("Compare"); },
                          [](const BoolOp&) { return std::string_view("BoolOp"); },
                          [](const UnaryOp&) { return std::string_view("UnaryOp"); },
                      },
                      expr.node);
}

std::string_view node_kind(const Stmt& stmt)
{
    return std::visit(Overloaded{
                          [](const FuncDef&) { return std::string_view("FuncDef"); },
                          [](const Assign&) { return std::string_view("Assign"); },
                          [](const AugAssign&) { return std::string_view("AugAssign"); },
                          [](const ExprStmt&) { return std::string_view("ExprStmt"); },
                          [](const If&) { return std::string_view("If"); },
                          [](const While&) { return std::string_view("While"); },
                          [](const For&) { return std::string_view("For"); },
                          [](const Try&) { return std::string_view("Try"); },
                          [](const Return&) { return std::string_view("Return"); },
                          [](const Break&) { return std::string_view("Break"); },
                          [](const Continue&) { return std::string_view("Continue"); },
                          [](const Pass&) { return std::string_view("Pass"); },
                      },
                      stmt.node);
}

std::string_view to_string(BinaryOperator op)
{
    switch (op) {
    case BinaryOperator::Add: return "+";
    case BinaryOperator::Sub: return "-";
    case BinaryOperator::Mul: return "*";
    case BinaryOperator::Div: return "/";
    case BinaryOperator::FloorDiv: return "//";
    case BinaryOperator::Mod: return "%";
    }
    return "?";
}

std::string_view to_string(CompareOperator op)
{
    switch (op) {
    case CompareOperator::Eq: return "==";
    case CompareOperator::NotEq: return "!=";
    case CompareOperator::Lt: return "<";
    case CompareOperator::LtE: return "<=";
    case CompareOperator::Gt: return ">";
    case CompareOperator::GtE: return ">=";
    }
    return "?";
}

std::string_view to_string(BoolOperator op)
{
    return op == BoolOperator::And ? "and" : "or";
}

std::string_view to_string(UnaryOperator op)
{
    return op == UnaryOperator::Neg ? "-" : "not";
}

std::string_view to_string(AugOperator op)
{
    switch (op) {
    case AugOperator::Add: return "+=";
    case AugOperator::Sub: return "-=";
    case AugOperator::Mul: return "*=";
    case AugOperator::Div: return "/=";
    }
    return "?";
}

namespace {

void strip_spans(nlohmann::json& j)
{
    if (j.is_object()) {
        j.erase("span");
        for (auto& [key, value] : j.items()) {
            strip_spans(value);
        }
    } else if (j.is_array()) {
        for (auto& value : j) {
            strip_spans(value);
        }
    }
}

} // namespace

bool same_shape(const Expr& a, const Expr& b)
{
    nlohmann::json ja = expr_to_json(a);
    nlohmann::json jb = expr_to_json(b);
    strip_spans(ja);
    strip_spans(jb);
    return ja == jb;
}

bool same_shape(const Stmt& a, const Stmt& b)
{
    nlohmann::json ja = stmt_to_json(a);
    nlohmann::json jb = stmt_to_json(b);
    strip_spans(ja);
    strip_spans(jb);
    return ja == jb;
}

std::vector<const Expr*> statement_exprs(const Stmt& stmt)
{
    std::vector<const Expr*> out;
    std::visit(Overloaded{
                   [&](const Assign& n) {
                       out.push_back(&n.target);
                       out.push_back(&n.value);
                   },
                   [&](const AugAssign& n) {
                       out.push_back(&n.target);
                       out.push_back(&n.value);
                   },
                   [&](const ExprStmt& n) { out.push_back(&n.expr); },
                   [&](const If& n) {
                       out.push_back(&n.cond);
                       for (const ElifClause& e : n.elifs) {
                           out.push_back(&e.cond);
                       }
                   },
                   [&](const While& n) { out.push_back(&n.cond); },
                   [&](const For& n) {
                       out.push_back(&n.target);
                       out.push_back(&n.iterable);
                   },
                   [&](const Return& n) {
                       if (n.value) {
                           out.push_back(&*n.value);
                       }
                   },
                   [](const auto&) {},
               },
               stmt.node);
    return out;
}

} // namespace qlc::lang
