#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qlc/common/box.hpp"
#include "qlc/lang/span.hpp"

namespace qlc::lang {

struct Expr;
struct Stmt;
using Block = std::vector<Stmt>;

// Expressions

struct Name {
    std::string id;
    bool operator==(const Name&) const = default;
};

struct IntLit {
    std::int64_t value = 0;
    bool operator==(const IntLit&) const = default;
};

struct FloatLit {
    double value = 0.0;
    bool operator==(const FloatLit&) const = default;
};

struct StringLit {
    std::string value;
    bool operator==(const StringLit&) const = default;
};

struct BoolLit {
    bool value = false;
    bool operator==(const BoolLit&) const = default;
};

struct NoneLit {
    bool operator==(const NoneLit&) const = default;
};

struct ListDisplay {
    std::vector<Expr> elements;
    friend bool operator==(const ListDisplay&, const ListDisplay&);
};

struct Subscript {
    Box<Expr> value;
    Box<Expr> index;
    friend bool operator==(const Subscript&, const Subscript&);
};

// Callee is always a Name.
struct Call {
    Box<Expr> callee;
    std::vector<Expr> args;
    friend bool operator==(const Call&, const Call&);
};

// Only `.append(...)` is accepted by the parser.
struct MethodCall {
    Box<Expr> receiver;
    std::string method;
    std::vector<Expr> args;
    friend bool operator==(const MethodCall&, const MethodCall&);
};

enum class BinaryOperator { Add, Sub, Mul, Div, FloorDiv, Mod };

struct BinOp {
    BinaryOperator op = BinaryOperator::Add;
    Box<Expr> lhs;
    Box<Expr> rhs;
    friend bool operator==(const BinOp&, const BinOp&);
};

enum class CompareOperator { Eq, NotEq, Lt, LtE, Gt, GtE };

struct Compare {
    CompareOperator op = CompareOperator::Eq;
    Box<Expr> lhs;
    Box<Expr> rhs;
    friend bool operator==(const Compare&, const Compare&);
};

enum class BoolOperator { And, Or };

struct BoolOp {
    BoolOperator op = BoolOperator::And;
    Box<Expr> lhs;
    Box<Expr> rhs;
    friend bool operator==(const BoolOp&, const BoolOp&);
};

enum class UnaryOperator { Neg, Not };

struct UnaryOp {
    UnaryOperator op = UnaryOperator::Neg;
    Box<Expr> operand;
    friend bool operator==(const UnaryOp&, const UnaryOp&);
};

using ExprNode = std::variant<Name, IntLit, FloatLit, StringLit, BoolLit, NoneLit, ListDisplay,
                              Subscript, Call, MethodCall, BinOp, Compare, BoolOp, UnaryOp>;

struct Expr {
    SourceSpan span;
    ExprNode node;

    template <typename T>
    const T* as() const { return std::get_if<T>(&node); }
    template <typename T>
    bool is() const { return std::holds_alternative<T>(node); }

    friend bool operator==(const Expr&, const Expr&);
};

// Statements

struct Param {
    std::string name;
    SourceSpan span;
    bool operator==(const Param&) const = default;
};

struct FuncDef {
    std::string name;
    std::vector<Param> params;
    Block body;
    friend bool operator==(const FuncDef&, const FuncDef&);
};

// Target is a Name or a Subscript.
struct Assign {
    Expr target;
    Expr value;
    friend bool operator==(const Assign&, const Assign&);
};

enum class AugOperator { Add, Sub, Mul, Div };

struct AugAssign {
    AugOperator op = AugOperator::Add;
    Expr target;
    Expr value;
    friend bool operator==(const AugAssign&, const AugAssign&);
};

struct ExprStmt {
    Expr expr;
    friend bool operator==(const ExprStmt&, const ExprStmt&);
};

struct ElifClause {
    SourceSpan span;
    Expr cond;
    Block body;
    friend bool operator==(const ElifClause&, const ElifClause&);
};

struct If {
    Expr cond;
    Block body;
    std::vector<ElifClause> elifs;
    std::optional<Block> orelse;
    friend bool operator==(const If&, const If&);
};

struct While {
    Expr cond;
    Block body;
    friend bool operator==(const While&, const While&);
};

// Target is a Name.
struct For {
    Expr target;
    Expr iterable;
    Block body;
    friend bool operator==(const For&, const For&);
};

// An empty exception_names list is a bare `except:`.
struct Handler {
    SourceSpan span;
    std::vector<std::string> exception_names;
    std::optional<std::string> bound_name;
    Block body;
    friend bool operator==(const Handler&, const Handler&);
};

struct Try {
    Block body;
    std::vector<Handler> handlers;
    friend bool operator==(const Try&, const Try&);
};

struct Return {
    std::optional<Expr> value;
    friend bool operator==(const Return&, const Return&);
};

struct Break {
    bool operator==(const Break&) const = default;
};
struct Continue {
    bool operator==(const Continue&) const = default;
};
struct Pass {
    bool operator==(const Pass&) const = default;
};

using StmtNode = std::variant<FuncDef, Assign, AugAssign, ExprStmt, If, While, For, Try, Return,
                              Break, Continue, Pass>;

struct Stmt {
    SourceSpan span;
    StmtNode node;

    template <typename T>
    const T* as() const { return std::get_if<T>(&node); }
    template <typename T>
    bool is() const { return std::holds_alternative<T>(node); }

    int line() const { return span.start_line; }

    friend bool operator==(const Stmt&, const Stmt&);
};

struct Program {
    SourceSpan span;
    Block body;
    friend bool operator==(const Program&, const Program&);
};

// A parsed program.
struct Ast {
    Program root;
    bool operator==(const Ast&) const = default;
};

std::string_view node_kind(const Expr& expr);
std::string_view node_kind(const Stmt& stmt);

std::string_view to_string(BinaryOperator op);
std::string_view to_string(CompareOperator op);
std::string_view to_string(BoolOperator op);
std::string_view to_string(UnaryOperator op);
std::string_view to_string(AugOperator op);

// Structural equality that ignores every span.
bool same_shape(const Expr& a, const Expr& b);
bool same_shape(const Stmt& a, const Stmt& b);

// Pre-order walk over every expression beneath `expr`, including itself.
template <typename Fn>
void walk_expr(const Expr& expr, Fn&& fn);

// Pre-order walk over statements, descending into nested blocks. Function
// bodies are visited too; use the callback's return value to prune:
// returning false skips the statement's children.
template <typename Fn>
void walk_stmts(const Block& block, Fn&& fn);

// Direct child expressions of a statement, not descending into blocks.
std::vector<const Expr*> statement_exprs(const Stmt& stmt);

} // namespace qlc::lang

#include "qlc/lang/ast_walk.hpp"
