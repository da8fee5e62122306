#pragma once

// Template definitions for the walkers declared in ast.hpp.

#include <type_traits>

#include "qlc/common/overloaded.hpp"

namespace qlc::lang {

template <typename Fn>
void walk_expr(const Expr& expr, Fn&& fn)
{
    fn(expr);
    std::visit(Overloaded{
                   [&](const ListDisplay& n) {
                       for (const Expr& e : n.elements) {
                           walk_expr(e, fn);
                       }
                   },
                   [&](const Subscript& n) {
                       walk_expr(*n.value, fn);
                       walk_expr(*n.index, fn);
                   },
                   [&](const Call& n) {
                       walk_expr(*n.callee, fn);
                       for (const Expr& e : n.args) {
                           walk_expr(e, fn);
                       }
                   },
                   [&](const MethodCall& n) {
                       walk_expr(*n.receiver, fn);
                       for (const Expr& e : n.args) {
                           walk_expr(e, fn);
                       }
                   },
                   [&](const BinOp& n) {
                       walk_expr(*n.lhs, fn);
                       walk_expr(*n.rhs, fn);
                   },
                   [&](const Compare& n) {
                       walk_expr(*n.lhs, fn);
                       walk_expr(*n.rhs, fn);
                   },
                   [&](const BoolOp& n) {
                       walk_expr(*n.lhs, fn);
                       walk_expr(*n.rhs, fn);
                   },
                   [&](const UnaryOp& n) { walk_expr(*n.operand, fn); },
                   [](const auto&) {},
               },
               expr.node);
}

template <typename Fn>
void walk_stmts(const Block& block, Fn&& fn)
{
    for (const Stmt& stmt : block) {
        bool descend = true;
        if constexpr (std::is_same_v<std::invoke_result_t<Fn&, const Stmt&>, bool>) {
            descend = fn(stmt);
        } else {
            fn(stmt);
        }
        if (!descend) {
            continue;
        }
        std::visit(Overloaded{
                       [&](const FuncDef& n) { walk_stmts(n.body, fn); },
                       [&](const If& n) {
                           walk_stmts(n.body, fn);
                           for (const ElifClause& e : n.elifs) {
                               walk_stmts(e.body, fn);
                           }
                           if (n.orelse) {
                               walk_stmts(*n.orelse, fn);
                           }
                       },
                       [&](const While& n) { walk_stmts(n.body, fn); },
                       [&](const For& n) { walk_stmts(n.body, fn); },
                       [&](const Try& n) {
                           walk_stmts(n.body, fn);
                           for (const Handler& h : n.handlers) {
                               walk_stmts(h.body, fn);
                           }
                       },
                       [](const auto&) {},
                   },
                   stmt.node);
    }
}

} // namespace qlc::lang
