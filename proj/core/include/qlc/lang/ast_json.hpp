#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "qlc/common/error.hpp"
#include "qlc/lang/ast.hpp"

namespace qlc::lang {

class SchemaError : public Error {
public:
    using Error::Error;
};

// Every node is an object {"kind": ..., "span": {...}, <fields>}.
nlohmann::json ast_to_json(const Ast& ast);
Ast ast_from_json(const nlohmann::json& json);

std::string ast_to_json_text(const Ast& ast, int indent = 2);
Ast ast_from_json_text(std::string_view text);

nlohmann::json expr_to_json(const Expr& expr);
nlohmann::json stmt_to_json(const Stmt& stmt);
nlohmann::json span_to_json(const SourceSpan& span);
SourceSpan span_from_json(const nlohmann::json& json);

} // namespace qlc::lang
