#include "qlc/lang/ast_json.hpp"

#include <array>

#include "qlc/common/overloaded.hpp"

namespace qlc::lang {

using nlohmann::json;

namespace {

json block_to_json(const Block& block)
{
    json arr = json::array();
    for (const Stmt& s : block) {
        arr.push_back(stmt_to_json(s));
    }
    return arr;
}

json exprs_to_json(const std::vector<Expr>& exprs)
{
    json arr = json::array();
    for (const Expr& e : exprs) {
        arr.push_back(expr_to_json(e));
    }
    return arr;
}

json node(std::string_view kind, const SourceSpan& span)
{
    return json{{"kind", kind}, {"span", span_to_json(span)}};
}

// Reading

const json& field(const json& j, const char* name)
{
    if (!j.is_object()) {
        throw SchemaError("expected a JSON object");
    }
    auto it = j.find(name);
    if (it == j.end()) {
        throw SchemaError(std::string("missing required field '") + name + "'");
    }
    return *it;
}

std::string string_field(const json& j, const char* name)
{
    const json& v = field(j, name);
    if (!v.is_string()) {
        throw SchemaError(std::string("field '") + name + "' must be a string");
    }
    return v.get<std::string>();
}

const json& array_field(const json& j, const char* name)
{
    const json& v = field(j, name);
    if (!v.is_array()) {
        throw SchemaError(std::string("field '") + name + "' must be an array");
    }
    return v;
}

Expr expr_from(const json& j);
Stmt stmt_from(const json& j);

Block block_from(const json& arr)
{
    Block out;
    for (const json& s : arr) {
        out.push_back(stmt_from(s));
    }
    return out;
}

std::vector<Expr> exprs_from(const json& arr)
{
    std::vector<Expr> out;
    for (const json& e : arr) {
        out.push_back(expr_from(e));
    }
    return out;
}

template <typename Enum, std::size_t N>
Enum enum_from(const json& j, const char* name, const std::array<Enum, N>& values)
{
    std::string text = string_field(j, name);
    for (Enum v : values) {
        if (to_string(v) == text) {
            return v;
        }
    }
    throw SchemaError("unknown operator '" + text + "'");
}

constexpr std::array<BinaryOperator, 6> kBinaryOps{BinaryOperator::Add, BinaryOperator::Sub,
                                                   BinaryOperator::Mul, BinaryOperator::Div,
                                                   BinaryOperator::FloorDiv, BinaryOperator::Mod};
constexpr std::array<CompareOperator, 6> kCompareOps{CompareOperator::Eq, CompareOperator::NotEq,
                                                     CompareOperator::Lt, CompareOperator::LtE,
                                                     CompareOperator::Gt, CompareOperator::GtE};
constexpr std::array<BoolOperator, 2> kBoolOps{BoolOperator::And, BoolOperator::Or};
constexpr std::array<UnaryOperator, 2> kUnaryOps{UnaryOperator::Neg, UnaryOperator::Not};
constexpr std::array<AugOperator, 4> kAugOps{AugOperator::Add, AugOperator::Sub, AugOperator::Mul,
                                             AugOperator::Div};

Expr expr_from(const json& j)
{
    std::string kind = string_field(j, "kind");
    SourceSpan span = span_from_json(field(j, "span"));
    try {
        if (kind == "Name") return {span, Name{string_field(j, "id")}};
        if (kind == "IntLit") return {span, IntLit{field(j, "value").get<std::int64_t>()}};
        if (kind == "FloatLit") return {span, FloatLit{field(j, "value").get<double>()}};
        if (kind == "StringLit") return {span, StringLit{string_field(j, "value")}};
        if (kind == "BoolLit") return {span, BoolLit{field(j, "value").get<bool>()}};
        if (kind == "NoneLit") return {span, NoneLit{}};
        if (kind == "ListDisplay") return {span, ListDisplay{exprs_from(array_field(j, "elements"))}};
        if (kind == "Subscript") {
            return {span, Subscript{expr_from(field(j, "value")), expr_from(field(j, "index"))}};
        }
        if (kind == "Call") {
            return {span, Call{expr_from(field(j, "callee")), exprs_from(array_field(j, "args"))}};
        }
        if (kind == "MethodCall") {
            return {span, MethodCall{expr_from(field(j, "receiver")), string_field(j, "method"),
                                     exprs_from(array_field(j, "args"))}};
        }
        if (kind == "BinOp") {
            return {span, BinOp{enum_from(j, "op", kBinaryOps), expr_from(field(j, "lhs")),
                                expr_from(field(j, "rhs"))}};
        }
        if (kind == "Compare") {
            return {span, Compare{enum_from(j, "op", kCompareOps), expr_from(field(j, "lhs")),
                                  expr_from(field(j, "rhs"))}};
        }
        if (kind == "BoolOp") {
            return {span, BoolOp{enum_from(j, "op", kBoolOps), expr_from(field(j, "lhs")),
                                 expr_from(field(j, "rhs"))}};
        }
        if (kind == "UnaryOp") {
            return {span, UnaryOp{enum_from(j, "op", kUnaryOps), expr_from(field(j, "operand"))}};
        }
    } catch (const json::exception& e) {
        throw SchemaError(std::string("malformed ") + kind + " node: " + e.what());
    }
    throw SchemaError("unknown expression kind '" + kind + "'");
}

Handler handler_from(const json& j)
{
    if (string_field(j, "kind") != "Handler") {
        throw SchemaError("expected a Handler node");
    }
    Handler h;
    h.span = span_from_json(field(j, "span"));
    for (const json& n : array_field(j, "exceptionNames")) {
        if (!n.is_string()) {
            throw SchemaError("exception names must be strings");
        }
        h.exception_names.push_back(n.get<std::string>());
    }
    const json& bound = field(j, "boundName");
    if (!bound.is_null()) {
        if (!bound.is_string()) {
            throw SchemaError("boundName must be a string or null");
        }
        h.bound_name = bound.get<std::string>();
    }
    h.body = block_from(array_field(j, "body"));
    return h;
}

Stmt stmt_from(const json& j)
{
    std::string kind = string_field(j, "kind");
    SourceSpan span = span_from_json(field(j, "span"));
    if (kind == "FuncDef") {
        std::vector<Param> params;
        for (const json& p : array_field(j, "params")) {
            params.push_back({string_field(p, "name"), span_from_json(field(p, "span"))});
        }
        return {span, FuncDef{string_field(j, "name"), std::move(params),
                              block_from(array_field(j, "body"))}};
    }
    if (kind == "Assign") {
        return {span, Assign{expr_from(field(j, "target")), expr_from(field(j, "value"))}};
    }
    if (kind == "AugAssign") {
        return {span, AugAssign{enum_from(j, "op", kAugOps), expr_from(field(j, "target")),
                                expr_from(field(j, "value"))}};
    }
    if (kind == "ExprStmt") return {span, ExprStmt{expr_from(field(j, "expr"))}};
    if (kind == "If") {
        If node{expr_from(field(j, "cond")), block_from(array_field(j, "body")), {}, std::nullopt};
        for (const json& e : array_field(j, "elifs")) {
            node.elifs.push_back({span_from_json(field(e, "span")), expr_from(field(e, "cond")),
                                  block_from(array_field(e, "body"))});
        }
        const json& orelse = field(j, "orelse");
        if (!orelse.is_null()) {
            node.orelse = block_from(array_field(j, "orelse"));
        }
        return {span, std::move(node)};
    }
    if (kind == "While") {
        return {span, While{expr_from(field(j, "cond")), block_from(array_field(j, "body"))}};
    }
    if (kind == "For") {
        return {span, For{expr_from(field(j, "target")), expr_from(field(j, "iterable")),
                          block_from(array_field(j, "body"))}};
    }
    if (kind == "Try") {
        std::vector<Handler> handlers;
        for (const json& h : array_field(j, "handlers")) {
            handlers.push_back(handler_from(h));
        }
        return {span, Try{block_from(array_field(j, "body")), std::move(handlers)}};
    }
    if (kind == "Return") {
        const json& value = field(j, "value");
        return {span, Return{value.is_null() ? std::nullopt : std::optional<Expr>(expr_from(value))}};
    }
    if (kind == "Break") return {span, Break{}};
    if (kind == "Continue") return {span, Continue{}};
    if (kind == "Pass") return {span, Pass{}};
    throw SchemaError("unknown statement kind '" + kind + "'");
}

} // namespace

json span_to_json(const SourceSpan& span)
{
    return json{{"startLine", span.start_line},
                {"startCol", span.start_col},
                {"endLine", span.end_line},
                {"endCol", span.end_col}};
}

SourceSpan span_from_json(const json& j)
{
    auto get = [&](const char* name) {
        const json& v = field(j, name);
        if (!v.is_number_integer()) {
            throw SchemaError(std::string("span field '") + name + "' must be an integer");
        }
        return v.get<int>();
    };
    return {get("startLine"), get("startCol"), get("endLine"), get("endCol")};
}

json expr_to_json(const Expr& expr)
{
    json j = node(node_kind(expr), expr.span);
    std::visit(Overloaded{
                   [&](const Name& n) { j["id"] = n.id; },
                   [&](const IntLit& n) { j["value"] = n.value; },
                   [&](const FloatLit& n) { j["value"] = n.value; },
                   [&](const StringLit& n) { j["value"] = n.value; },
                   [&](const BoolLit& n) { j["value"] = n.value; },
                   [&](const NoneLit&) {},
                   [&](const ListDisplay& n) { j["elements"] = exprs_to_json(n.elements); },
                   [&](const Subscript& n) {
                       j["value"] = expr_to_json(*n.value);
                       j["index"] = expr_to_json(*n.index);
                   },
                   [&](const Call& n) {
                       j["callee"] = expr_to_json(*n.callee);
                       j["args"] = exprs_to_json(n.args);
                   },
                   [&](const MethodCall& n) {
                       j["receiver"] = expr_to_json(*n.receiver);
                       j["method"] = n.method;
                       j["args"] = exprs_to_json(n.args);
                   },
                   [&](const BinOp& n) {
                       j["op"] = to_string(n.op);
                       j["lhs"] = expr_to_json(*n.lhs);
                       j["rhs"] = expr_to_json(*n.rhs);
                   },
                   [&](const Compare& n) {
                       j["op"] = to_string(n.op);
                       j["lhs"] = expr_to_json(*n.lhs);
                       j["rhs"] = expr_to_json(*n.rhs);
                   },
                   [&](const BoolOp& n) {
                       j["op"] = to_string(n.op);
                       j["lhs"] = expr_to_json(*n.lhs);
                       j["rhs"] = expr_to_json(*n.rhs);
                   },
                   [&](const UnaryOp& n) {
                       j["op"] = to_string(n.op);
                       j["operand"] = expr_to_json(*n.operand);
                   },
               },
               expr.node);
    return j;
}

json stmt_to_json(const Stmt& stmt)
{
    json j = node(node_kind(stmt), stmt.span);
    std::visit(Overloaded{
                   [&](const FuncDef& n) {
                       j["name"] = n.name;
                       json params = json::array();
                       for (const Param& p : n.params) {
                           params.push_back({{"name", p.name}, {"span", span_to_json(p.span)}});
                       }
                       j["params"] = std::move(params);
                       j["body"] = block_to_json(n.body);
                   },
                   [&](const Assign& n) {
                       j["target"] = expr_to_json(n.target);
                       j["value"] = expr_to_json(n.value);
                   },
                   [&](const AugAssign& n) {
                       j["op"] = to_string(n.op);
                       j["target"] = expr_to_json(n.target);
                       j["value"] = expr_to_json(n.value);
                   },
                   [&](const ExprStmt& n) { j["expr"] = expr_to_json(n.expr); },
                   [&](const If& n) {
                       j["cond"] = expr_to_json(n.cond);
                       j["body"] = block_to_json(n.body);
                       json elifs = json::array();
                       for (const ElifClause& e : n.elifs) {
                           json ej = node("Elif", e.span);
                           ej["cond"] = expr_to_json(e.cond);
                           ej["body"] = block_to_json(e.body);
                           elifs.push_back(std::move(ej));
                       }
                       j["elifs"] = std::move(elifs);
                       j["orelse"] = n.orelse ? block_to_json(*n.orelse) : json(nullptr);
                   },
                   [&](const While& n) {
                       j["cond"] = expr_to_json(n.cond);
                       j["body"] = block_to_json(n.body);
                   },
                   [&](const For& n) {
                       j["target"] = expr_to_json(n.target);
                       j["iterable"] = expr_to_json(n.iterable);
                       j["body"] = block_to_json(n.body);
                   },
                   [&](const Try& n) {
                       j["body"] = block_to_json(n.body);
                       json handlers = json::array();
                       for (const Handler& h : n.handlers) {
                           json hj = node("Handler", h.span);
                           hj["exceptionNames"] = h.exception_names;
                           hj["boundName"] = h.bound_name ? json(*h.bound_name) : json(nullptr);
                           hj["body"] = block_to_json(h.body);
                           handlers.push_back(std::move(hj));
                       }
                       j["handlers"] = std::move(handlers);
                   },
                   [&](const Return& n) {
                       j["value"] = n.value ? expr_to_json(*n.value) : json(nullptr);
                   },
                   [](const auto&) {},
               },
               stmt.node);
    return j;
}

json ast_to_json(const Ast& ast)
{
    json j = node("Program", ast.root.span);
    j["body"] = block_to_json(ast.root.body);
    return j;
}

Ast ast_from_json(const json& j)
{
    if (string_field(j, "kind") != "Program") {
        throw SchemaError("root node must be a Program");
    }
    Ast ast;
    try {
        ast.root.span = span_from_json(field(j, "span"));
        ast.root.body = block_from(array_field(j, "body"));
    } catch (const json::exception& e) {
        throw SchemaError(std::string("malformed AST: ") + e.what());
    }
    return ast;
}

std::string ast_to_json_text(const Ast& ast, int indent)
{
    return ast_to_json(ast).dump(indent);
}

Ast ast_from_json_text(std::string_view text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
    return ast_from_json(j);
}

} // namespace qlc::lang
