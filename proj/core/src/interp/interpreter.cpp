#include "qlc/interp/interpreter.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <map>
#include <set>
#include <unordered_map>

#include "qlc/common/overloaded.hpp"

namespace qlc::interp {

using namespace qlc::lang;

namespace {

// Largest string or list the interpreter will build.
constexpr std::size_t kMaxSequenceLength = 10'000'000;

// A source-language exception in flight.
struct PyException {
    std::string name;
    int line;
    std::string message;
};

struct StepLimitHit {
    int line;
};

enum class Flow { Normal, Break, Continue, Return };

using Binding = std::variant<Value, const FuncDef*>;

struct Frame {
    std::unordered_map<std::string, Binding> vars;
    // Names the function assigns anywhere in its body; these never fall
    // through to module scope.
    const std::set<std::string>* local_names = nullptr;
    Value return_value;
};

constexpr std::string_view kBuiltinFunctions[] = {"input", "print", "int", "float", "str", "len",
                                                  "range", "abs", "round", "sum", "min", "max"};

bool is_builtin_function(std::string_view name)
{
    return std::find(std::begin(kBuiltinFunctions), std::end(kBuiltinFunctions), name) !=
           std::end(kBuiltinFunctions);
}

std::string_view trim(std::string_view s)
{
    auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
    while (!s.empty() && is_space(s.front())) {
        s.remove_prefix(1);
    }
    while (!s.empty() && is_space(s.back())) {
        s.remove_suffix(1);
    }
    return s;
}

// Removes '_' separators; fails if one is not between two digits.
std::optional<std::string> strip_digit_separators(std::string_view s)
{
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '_') {
            bool ok = i > 0 && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i - 1])) &&
                      std::isdigit(static_cast<unsigned char>(s[i + 1]));
            if (!ok) {
                return std::nullopt;
            }
            continue;
        }
        out += s[i];
    }
    return out;
}

enum class IntParse { Ok, Invalid, TooLarge };

IntParse parse_int_checked(std::string_view text, std::int64_t& out)
{
    std::string_view s = trim(text);
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    auto digits = strip_digit_separators(s);
    if (!digits || digits->empty()) {
        return IntParse::Invalid;
    }
    for (char c : *digits) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return IntParse::Invalid;
        }
    }
    // Accumulate negatively so INT64_MIN parses.
    std::int64_t acc = 0;
    for (char c : *digits) {
        int d = c - '0';
        if (acc < (std::numeric_limits<std::int64_t>::min() + d) / 10) {
            return IntParse::TooLarge;
        }
        acc = acc * 10 - d;
    }
    if (!negative) {
        if (acc == std::numeric_limits<std::int64_t>::min()) {
            return IntParse::TooLarge;
        }
        acc = -acc;
    }
    out = acc;
    return IntParse::Ok;
}

bool iequals(std::string_view a, std::string_view b)
{
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) == y;
           });
}

class Machine {
public:
    Machine(const Ast& ast, const IoScript& io, std::int64_t step_limit)
        : ast_(ast), io_(io), step_limit_(step_limit)
    {
    }

    ExecTrace run_module(std::string_view module_name)
    {
        globals_.vars["__name__"] = Value(std::string(module_name));
        try {
            exec_block(ast_.root.body, globals_);
            trace_.result = Value();
        } catch (const PyException& e) {
            trace_.result = fault_for(e);
        } catch (const StepLimitHit& hit) {
            trace_.result = step_fault(hit);
        }
        return finish();
    }

    ExecTrace run_call(std::string_view name, std::vector<Value> args)
    {
        globals_.vars["__name__"] = Value(std::string("solution"));
        try {
            exec_block(ast_.root.body, globals_);
            auto it = globals_.vars.find(std::string(name));
            const FuncDef* const* fn =
                it == globals_.vars.end() ? nullptr : std::get_if<const FuncDef*>(&it->second);
            if (fn == nullptr) {
                raise("NameError", 0, "name '" + std::string(name) + "' is not a function after loading");
            }
            trace_.result = invoke(**fn, std::move(args), 0);
        } catch (const PyException& e) {
            trace_.result = fault_for(e);
        } catch (const StepLimitHit& hit) {
            trace_.result = step_fault(hit);
        }
        return finish();
    }

private:
    ExecTrace finish()
    {
        trace_.steps_used = steps_;
        return std::move(trace_);
    }

    static RuntimeFault fault_for(const PyException& e)
    {
        FaultKind kind = FaultKind::TypeFault;
        if (e.name == "ValueError") {
            kind = FaultKind::ValueErrorFault;
        } else if (e.name == "ZeroDivisionError") {
            kind = FaultKind::ZeroDivisionFault;
        } else if (e.name == "EOFError") {
            kind = FaultKind::EndOfInput;
        } else if (e.name == "NameError" || e.name == "UnboundLocalError") {
            kind = FaultKind::NameFault;
        } else if (e.name == "IndexError") {
            kind = FaultKind::IndexFault;
        } else if (e.name == "RecursionError") {
            kind = FaultKind::RecursionFault;
        } else if (e.name == "OverflowError") {
            kind = FaultKind::OverflowFault;
        }
        return RuntimeFault{kind, e.line, e.name, e.message};
    }

    static RuntimeFault step_fault(const StepLimitHit& hit)
    {
        return RuntimeFault{FaultKind::StepLimitExceeded, hit.line, "", "step limit exceeded"};
    }

    [[noreturn]] void raise(std::string name, int line, std::string message)
    {
        trace_.events.push_back(RaiseEvent{line, name});
        throw PyException{std::move(name), line, std::move(message)};
    }

    [[noreturn]] void type_error(int line, std::string message)
    {
        raise("TypeError", line, std::move(message));
    }

    void step(int line)
    {
        if (steps_ >= step_limit_) {
            throw StepLimitHit{line};
        }
        ++steps_;
    }

    // Statements

    Flow exec_block(const Block& block, Frame& frame)
    {
        for (const Stmt& stmt : block) {
            Flow flow = exec_stmt(stmt, frame);
            if (flow != Flow::Normal) {
                return flow;
            }
        }
        return Flow::Normal;
    }

    Flow exec_stmt(const Stmt& stmt, Frame& frame)
    {
        step(stmt.line());
        return std::visit(
            Overloaded{
                [&](const FuncDef& n) {
                    frame.vars[n.name] = &n;
                    return Flow::Normal;
                },
                [&](const Assign& n) {
                    Value v = eval(n.value, frame);
                    assign(n.target, std::move(v), frame);
                    return Flow::Normal;
                },
                [&](const AugAssign& n) {
                    Value current = eval(n.target, frame);
                    Value rhs = eval(n.value, frame);
                    BinaryOperator op = n.op == AugOperator::Add   ? BinaryOperator::Add
                                        : n.op == AugOperator::Sub ? BinaryOperator::Sub
                                        : n.op == AugOperator::Mul ? BinaryOperator::Mul
                                                                   : BinaryOperator::Div;
                    assign(n.target, binary(op, current, rhs, stmt.line()), frame);
                    return Flow::Normal;
                },
                [&](const ExprStmt& n) {
                    eval(n.expr, frame);
                    return Flow::Normal;
                },
                [&](const If& n) {
                    if (eval(n.cond, frame).truthy()) {
                        return exec_block(n.body, frame);
                    }
                    for (const ElifClause& e : n.elifs) {
                        if (eval(e.cond, frame).truthy()) {
                            return exec_block(e.body, frame);
                        }
                    }
                    if (n.orelse) {
                        return exec_block(*n.orelse, frame);
                    }
                    return Flow::Normal;
                },
                [&](const While& n) {
                    while (eval(n.cond, frame).truthy()) {
                        Flow flow = exec_block(n.body, frame);
                        if (flow == Flow::Break) {
                            break;
                        }
                        if (flow == Flow::Return) {
                            return flow;
                        }
                    }
                    return Flow::Normal;
                },
                [&](const For& n) { return exec_for(n, stmt, frame); },
                [&](const Try& n) { return exec_try(n, frame); },
                [&](const Return& n) {
                    frame.return_value = n.value ? eval(*n.value, frame) : Value();
                    return Flow::Return;
                },
                [](const Break&) { return Flow::Break; },
                [](const Continue&) { return Flow::Continue; },
                [](const Pass&) { return Flow::Normal; },
            },
            stmt.node);
    }

    Flow exec_for(const For& n, const Stmt& stmt, Frame& frame)
    {
        Value iterable = eval(n.iterable, frame);
        auto run_body = [&](Value item) -> std::optional<Flow> {
            assign(n.target, std::move(item), frame);
            Flow flow = exec_block(n.body, frame);
            if (flow == Flow::Break) {
                return Flow::Normal;
            }
            if (flow == Flow::Return) {
                return flow;
            }
            return std::nullopt;
        };
        if (iterable.is_list()) {
            // Index-based so appends during iteration are seen, as in the
            // source language.
            List& items = iterable.as_list();
            for (std::size_t i = 0; i < items.size(); ++i) {
                if (auto done = run_body(items[i])) {
                    return *done;
                }
            }
            return Flow::Normal;
        }
        if (iterable.is_str()) {
            std::string text = iterable.as_str();
            for (char c : text) {
                if (auto done = run_body(Value(std::string(1, c)))) {
                    return *done;
                }
            }
            return Flow::Normal;
        }
        type_error(stmt.line(), "'" + iterable.type_name() + "' object is not iterable");
    }

    Flow exec_try(const Try& n, Frame& frame)
    {
        try {
            return exec_block(n.body, frame);
        } catch (const PyException& e) {
            for (const Handler& h : n.handlers) {
                if (!handler_catches(h.exception_names, e.name)) {
                    continue;
                }
                trace_.events.push_back(HandleEvent{h.span.start_line, e.name});
                if (h.bound_name) {
                    bind(*h.bound_name, Value(e.message), frame);
                }
                return exec_block(h.body, frame);
            }
            throw;
        }
    }

    // Names

    void bind(const std::string& name, Binding value, Frame& frame)
    {
        frame.vars[name] = std::move(value);
    }

    void assign(const Expr& target, Value value, Frame& frame)
    {
        if (const Name* name = target.as<Name>()) {
            bind(name->id, std::move(value), frame);
            return;
        }
        const Subscript& sub = std::get<Subscript>(target.node);
        Value container = eval(*sub.value, frame);
        Value index = eval(*sub.index, frame);
        int line = target.span.start_line;
        if (!container.is_list()) {
            type_error(line, "'" + container.type_name() + "' object does not support item assignment");
        }
        List& items = container.as_list();
        items[checked_index(index, items.size(), line, "list assignment index out of range")] =
            std::move(value);
    }

    const Binding* lookup(const std::string& name, Frame& frame, int line)
    {
        if (&frame != &globals_ && frame.local_names != nullptr && frame.local_names->count(name)) {
            auto it = frame.vars.find(name);
            if (it == frame.vars.end()) {
                raise("UnboundLocalError", line,
                      "local variable '" + name + "' referenced before assignment");
            }
            return &it->second;
        }
        auto it = globals_.vars.find(name);
        if (it != globals_.vars.end()) {
            return &it->second;
        }
        return nullptr;
    }

    Value load(const std::string& name, Frame& frame, int line)
    {
        const Binding* b = lookup(name, frame, line);
        if (b == nullptr) {
            if (is_builtin_function(name)) {
                type_error(line, "built-in function '" + name + "' cannot be used as a value");
            }
            raise("NameError", line, "name '" + name + "' is not defined");
        }
        if (const Value* v = std::get_if<Value>(b)) {
            return *v;
        }
        type_error(line, "function '" + name + "' cannot be used as a value");
    }

    // Expressions

    Value eval(const Expr& expr, Frame& frame)
    {
        int line = expr.span.start_line;
        return std::visit(
            Overloaded{
                [&](const Name& n) { return load(n.id, frame, line); },
                [](const IntLit& n) { return Value(n.value); },
                [](const FloatLit& n) { return Value(n.value); },
                [](const StringLit& n) { return Value(n.value); },
                [](const BoolLit& n) { return Value(n.value); },
                [](const NoneLit&) { return Value(); },
                [&](const ListDisplay& n) {
                    List items;
                    for (const Expr& e : n.elements) {
                        items.push_back(eval(e, frame));
                    }
                    return Value::new_list(std::move(items));
                },
                [&](const Subscript& n) {
                    Value container = eval(*n.value, frame);
                    Value index = eval(*n.index, frame);
                    return subscript(container, index, line);
                },
                [&](const Call& n) { return call(n, frame, line); },
                [&](const MethodCall& n) {
                    Value receiver = eval(*n.receiver, frame);
                    if (!receiver.is_list()) {
                        raise("AttributeError", line,
                              "'" + receiver.type_name() + "' object has no attribute '" + n.method + "'");
                    }
                    if (n.args.size() != 1) {
                        type_error(line, "append() takes exactly one argument");
                    }
                    Value item = eval(n.args[0], frame);
                    if (receiver.as_list().size() >= kMaxSequenceLength) {
                        raise("OverflowError", line, "list is too long");
                    }
                    receiver.as_list().push_back(std::move(item));
                    return Value();
                },
                [&](const BinOp& n) {
                    Value lhs = eval(*n.lhs, frame);
                    Value rhs = eval(*n.rhs, frame);
                    return binary(n.op, lhs, rhs, line);
                },
                [&](const Compare& n) {
                    Value lhs = eval(*n.lhs, frame);
                    Value rhs = eval(*n.rhs, frame);
                    return Value(compare(n.op, lhs, rhs, line));
                },
                [&](const BoolOp& n) {
                    Value lhs = eval(*n.lhs, frame);
                    bool short_circuit = n.op == BoolOperator::And ? !lhs.truthy() : lhs.truthy();
                    if (short_circuit) {
                        return lhs;
                    }
                    return eval(*n.rhs, frame);
                },
                [&](const UnaryOp& n) {
                    Value v = eval(*n.operand, frame);
                    if (n.op == UnaryOperator::Not) {
                        return Value(!v.truthy());
                    }
                    if (v.is_float()) {
                        return Value(-v.as_float());
                    }
                    if (v.is_int() || v.is_bool()) {
                        std::int64_t i = v.to_integer();
                        if (i == std::numeric_limits<std::int64_t>::min()) {
                            raise("OverflowError", line, "integer overflow");
                        }
                        return Value(-i);
                    }
                    type_error(line, "bad operand type for unary -: '" + v.type_name() + "'");
                },
            },
            expr.node);
    }

    std::size_t checked_index(const Value& index, std::size_t size, int line, const char* range_message)
    {
        if (!index.is_int() && !index.is_bool()) {
            type_error(line, "indices must be integers, not " + index.type_name());
        }
        std::int64_t i = index.to_integer();
        std::int64_t n = static_cast<std::int64_t>(size);
        if (i < 0) {
            i += n;
        }
        if (i < 0 || i >= n) {
            raise("IndexError", line, range_message);
        }
        return static_cast<std::size_t>(i);
    }

    Value subscript(const Value& container, const Value& index, int line)
    {
        if (container.is_list()) {
            const List& items = container.as_list();
            return items[checked_index(index, items.size(), line, "list index out of range")];
        }
        if (container.is_str()) {
            const std::string& s = container.as_str();
            return Value(std::string(1, s[checked_index(index, s.size(), line, "string index out of range")]));
        }
        type_error(line, "'" + container.type_name() + "' object is not subscriptable");
    }

    Value binary(BinaryOperator op, const Value& a, const Value& b, int line)
    {
        if (op == BinaryOperator::Add) {
            if (a.is_str() && b.is_str()) {
                if (a.as_str().size() + b.as_str().size() > kMaxSequenceLength) {
                    raise("OverflowError", line, "string is too long");
                }
                return Value(a.as_str() + b.as_str());
            }
            if (a.is_list() && b.is_list()) {
                if (a.as_list().size() + b.as_list().size() > kMaxSequenceLength) {
                    raise("OverflowError", line, "list is too long");
                }
                List joined = a.as_list();
                joined.insert(joined.end(), b.as_list().begin(), b.as_list().end());
                return Value::new_list(std::move(joined));
            }
        }
        if (!a.is_number() || !b.is_number()) {
            type_error(line, "unsupported operand type(s) for " + std::string(to_string(op)) + ": '" +
                                 a.type_name() + "' and '" + b.type_name() + "'");
        }
        if (op == BinaryOperator::Div) {
            double den = b.to_double();
            if (den == 0.0) {
                raise("ZeroDivisionError", line, "division by zero");
            }
            return Value(a.to_double() / den);
        }
        if (a.is_float() || b.is_float()) {
            double x = a.to_double();
            double y = b.to_double();
            switch (op) {
            case BinaryOperator::Add: return Value(x + y);
            case BinaryOperator::Sub: return Value(x - y);
            case BinaryOperator::Mul: return Value(x * y);
            case BinaryOperator::FloorDiv:
            case BinaryOperator::Mod: {
                if (y == 0.0) {
                    raise("ZeroDivisionError", line,
                          op == BinaryOperator::Mod ? "float modulo" : "float floor division by zero");
                }
                double mod = std::fmod(x, y);
                double div = (x - mod) / y;
                if (mod != 0.0) {
                    if ((y < 0) != (mod < 0)) {
                        mod += y;
                        div -= 1.0;
                    }
                } else {
                    mod = std::copysign(0.0, y);
                }
                double floordiv = 0.0;
                if (div != 0.0) {
                    floordiv = std::floor(div);
                    if (div - floordiv > 0.5) {
                        floordiv += 1.0;
                    }
                } else {
                    floordiv = std::copysign(0.0, x / y);
                }
                return Value(op == BinaryOperator::Mod ? mod : floordiv);
            }
            default: break;
            }
        }
        std::int64_t x = a.to_integer();
        std::int64_t y = b.to_integer();
        std::int64_t r = 0;
        auto overflow = [&]() { raise("OverflowError", line, "integer overflow (values beyond 64 bits are not supported)"); };
        switch (op) {
        case BinaryOperator::Add:
            if (__builtin_add_overflow(x, y, &r)) overflow();
            return Value(r);
        case BinaryOperator::Sub:
            if (__builtin_sub_overflow(x, y, &r)) overflow();
            return Value(r);
        case BinaryOperator::Mul:
            if (__builtin_mul_overflow(x, y, &r)) overflow();
            return Value(r);
        case BinaryOperator::FloorDiv:
        case BinaryOperator::Mod: {
            if (y == 0) {
                raise("ZeroDivisionError", line,
                      op == BinaryOperator::Mod ? "integer modulo by zero" : "integer division or modulo by zero");
            }
            if (x == std::numeric_limits<std::int64_t>::min() && y == -1) {
                if (op == BinaryOperator::Mod) {
                    return Value(std::int64_t{0});
                }
                overflow();
            }
            std::int64_t q = x / y;
            std::int64_t m = x % y;
            if (m != 0 && ((m < 0) != (y < 0))) {
                q -= 1;
                m += y;
            }
            return Value(op == BinaryOperator::Mod ? m : q);
        }
        default: break;
        }
        type_error(line, "unsupported operation");
    }

    // Three-way comparison for ordering; raises TypeError for unordered types.
    int order(const Value& a, const Value& b, CompareOperator op, int line)
    {
        if (a.is_number() && b.is_number()) {
            if (a.is_float() || b.is_float()) {
                double x = a.to_double();
                double y = b.to_double();
                return x < y ? -1 : (x > y ? 1 : 0);
            }
            std::int64_t x = a.to_integer();
            std::int64_t y = b.to_integer();
            return x < y ? -1 : (x > y ? 1 : 0);
        }
        if (a.is_str() && b.is_str()) {
            int c = a.as_str().compare(b.as_str());
            return c < 0 ? -1 : (c > 0 ? 1 : 0);
        }
        if (a.is_list() && b.is_list()) {
            const List& x = a.as_list();
            const List& y = b.as_list();
            for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
                if (!(x[i] == y[i])) {
                    return order(x[i], y[i], op, line);
                }
            }
            return x.size() < y.size() ? -1 : (x.size() > y.size() ? 1 : 0);
        }
        type_error(line, "'" + std::string(to_string(op)) + "' not supported between instances of '" +
                             a.type_name() + "' and '" + b.type_name() + "'");
    }

    bool compare(CompareOperator op, const Value& a, const Value& b, int line)
    {
        if (op == CompareOperator::Eq) {
            return a == b;
        }
        if (op == CompareOperator::NotEq) {
            return !(a == b);
        }
        if ((a.is_float() && std::isnan(a.as_float())) || (b.is_float() && std::isnan(b.as_float()))) {
            if (a.is_number() && b.is_number()) {
                return false;
            }
        }
        int c = order(a, b, op, line);
        switch (op) {
        case CompareOperator::Lt: return c < 0;
        case CompareOperator::LtE: return c <= 0;
        case CompareOperator::Gt: return c > 0;
        case CompareOperator::GtE: return c >= 0;
        default: return false;
        }
    }

    // Calls

    Value call(const Call& n, Frame& frame, int line)
    {
        const std::string& name = std::get<Name>(n.callee->node).id;
        const Binding* b = lookup(name, frame, line);
        if (b != nullptr) {
            if (const FuncDef* const* fn = std::get_if<const FuncDef*>(b)) {
                std::vector<Value> args;
                for (const Expr& e : n.args) {
                    args.push_back(eval(e, frame));
                }
                return invoke(**fn, std::move(args), line);
            }
            type_error(line, "'" + std::get<Value>(*b).type_name() + "' object is not callable");
        }
        if (!is_builtin_function(name)) {
            raise("NameError", line, "name '" + name + "' is not defined");
        }
        std::vector<Value> args;
        for (const Expr& e : n.args) {
            args.push_back(eval(e, frame));
        }
        return builtin(name, args, line);
    }

    const std::set<std::string>& locals_of(const FuncDef& fn)
    {
        auto it = local_names_.find(&fn);
        if (it != local_names_.end()) {
            return it->second;
        }
        std::set<std::string> names;
        for (const Param& p : fn.params) {
            names.insert(p.name);
        }
        walk_stmts(fn.body, [&](const Stmt& s) {
            if (const FuncDef* inner = s.as<FuncDef>()) {
                names.insert(inner->name);
                return false;
            }
            auto add_target = [&](const Expr& target) {
                if (const Name* nm = target.as<Name>()) {
                    names.insert(nm->id);
                }
            };
            if (const Assign* a = s.as<Assign>()) {
                add_target(a->target);
            } else if (const AugAssign* a = s.as<AugAssign>()) {
                add_target(a->target);
            } else if (const For* f = s.as<For>()) {
                add_target(f->target);
            } else if (const Try* t = s.as<Try>()) {
                for (const Handler& h : t->handlers) {
                    if (h.bound_name) {
                        names.insert(*h.bound_name);
                    }
                }
            }
            return true;
        });
        return local_names_.emplace(&fn, std::move(names)).first->second;
    }

    Value invoke(const FuncDef& fn, std::vector<Value> args, int line)
    {
        trace_.events.push_back(CallEvent{fn.name, line});
        if (args.size() != fn.params.size()) {
            type_error(line, fn.name + "() takes " + std::to_string(fn.params.size()) +
                                 " positional argument(s) but " + std::to_string(args.size()) +
                                 " were given");
        }
        if (depth_ >= kMaxCallDepth) {
            raise("RecursionError", line, "maximum recursion depth exceeded");
        }
        Frame frame;
        frame.local_names = &locals_of(fn);
        for (std::size_t i = 0; i < args.size(); ++i) {
            frame.vars[fn.params[i].name] = std::move(args[i]);
        }
        ++depth_;
        struct DepthGuard {
            int& d;
            ~DepthGuard() { --d; }
        } guard{depth_};
        Flow flow = exec_block(fn.body, frame);
        return flow == Flow::Return ? frame.return_value : Value();
    }

    void expect_args(std::string_view name, const std::vector<Value>& args, std::size_t min,
                     std::size_t max, int line)
    {
        if (args.size() < min || args.size() > max) {
            type_error(line, std::string(name) + "() got " + std::to_string(args.size()) +
                                 " argument(s)");
        }
    }

    Value builtin(const std::string& name, const std::vector<Value>& args, int line)
    {
        if (name == "print") {
            std::string text;
            for (std::size_t i = 0; i < args.size(); ++i) {
                if (i > 0) {
                    text += ' ';
                }
                text += args[i].str();
            }
            std::size_t start = 0;
            while (true) {
                std::size_t nl = text.find('\n', start);
                trace_.stdout_lines.push_back(text.substr(start, nl - start));
                if (nl == std::string::npos) {
                    break;
                }
                start = nl + 1;
            }
            return Value();
        }
        if (name == "input") {
            expect_args(name, args, 0, 1, line);
            if (next_input_ >= io_.input_lines.size()) {
                raise("EOFError", line, "EOF when reading a line");
            }
            return Value(io_.input_lines[next_input_++]);
        }
        if (name == "int") {
            expect_args(name, args, 0, 1, line);
            if (args.empty()) {
                return Value(std::int64_t{0});
            }
            const Value& v = args[0];
            if (v.is_int() || v.is_bool()) {
                return Value(v.to_integer());
            }
            if (v.is_float()) {
                double d = v.as_float();
                if (std::isnan(d)) {
                    raise("ValueError", line, "cannot convert float NaN to integer");
                }
                double t = std::trunc(d);
                if (std::isinf(d) || t >= 9.2233720368547758e18 || t < -9.2233720368547758e18) {
                    raise("OverflowError", line, "cannot convert float to a 64-bit integer");
                }
                return Value(static_cast<std::int64_t>(t));
            }
            if (v.is_str()) {
                std::int64_t out = 0;
                switch (parse_int_checked(v.as_str(), out)) {
                case IntParse::Ok: return Value(out);
                case IntParse::TooLarge:
                    raise("OverflowError", line, "integer does not fit in 64 bits");
                case IntParse::Invalid:
                    raise("ValueError", line,
                          "invalid literal for int() with base 10: " + v.repr());
                }
            }
            type_error(line, "int() argument must be a string or a number, not '" + v.type_name() + "'");
        }
        if (name == "float") {
            expect_args(name, args, 0, 1, line);
            if (args.empty()) {
                return Value(0.0);
            }
            const Value& v = args[0];
            if (v.is_number()) {
                return Value(v.to_double());
            }
            if (v.is_str()) {
                if (auto d = parse_float_text(v.as_str())) {
                    return Value(*d);
                }
                raise("ValueError", line, "could not convert string to float: " + v.repr());
            }
            type_error(line, "float() argument must be a string or a number, not '" + v.type_name() + "'");
        }
        if (name == "str") {
            expect_args(name, args, 0, 1, line);
            return Value(args.empty() ? std::string() : args[0].str());
        }
        if (name == "len") {
            expect_args(name, args, 1, 1, line);
            if (args[0].is_str()) {
                return Value(static_cast<std::int64_t>(args[0].as_str().size()));
            }
            if (args[0].is_list()) {
                return Value(static_cast<std::int64_t>(args[0].as_list().size()));
            }
            type_error(line, "object of type '" + args[0].type_name() + "' has no len()");
        }
        if (name == "range") {
            expect_args(name, args, 1, 3, line);
            for (const Value& a : args) {
                if (!a.is_int() && !a.is_bool()) {
                    type_error(line, "'" + a.type_name() + "' object cannot be interpreted as an integer");
                }
            }
            std::int64_t start = args.size() == 1 ? 0 : args[0].to_integer();
            std::int64_t stop = args.size() == 1 ? args[0].to_integer() : args[1].to_integer();
            std::int64_t stride = args.size() == 3 ? args[2].to_integer() : 1;
            if (stride == 0) {
                raise("ValueError", line, "range() arg 3 must not be zero");
            }
            List items;
            for (std::int64_t i = start; stride > 0 ? i < stop : i > stop; i += stride) {
                if (items.size() >= kMaxSequenceLength ||
                    static_cast<std::int64_t>(items.size()) > step_limit_) {
                    throw StepLimitHit{line};
                }
                items.emplace_back(i);
                if ((stride > 0 && i > std::numeric_limits<std::int64_t>::max() - stride) ||
                    (stride < 0 && i < std::numeric_limits<std::int64_t>::min() - stride)) {
                    break;
                }
            }
            return Value::new_list(std::move(items));
        }
        if (name == "abs") {
            expect_args(name, args, 1, 1, line);
            const Value& v = args[0];
            if (v.is_float()) {
                return Value(std::fabs(v.as_float()));
            }
            if (v.is_int() || v.is_bool()) {
                std::int64_t i = v.to_integer();
                if (i == std::numeric_limits<std::int64_t>::min()) {
                    raise("OverflowError", line, "integer overflow");
                }
                return Value(i < 0 ? -i : i);
            }
            type_error(line, "bad operand type for abs(): '" + v.type_name() + "'");
        }
        if (name == "round") {
            expect_args(name, args, 1, 2, line);
            const Value& v = args[0];
            if (!v.is_number()) {
                type_error(line, "type " + v.type_name() + " doesn't define __round__ method");
            }
            if (args.size() == 1 || args[1].is_none()) {
                if (!v.is_float()) {
                    return Value(v.to_integer());
                }
                double r = std::nearbyint(v.as_float());
                if (!std::isfinite(r) || std::fabs(r) >= 9.2233720368547758e18) {
                    raise("OverflowError", line, "cannot convert float to a 64-bit integer");
                }
                return Value(static_cast<std::int64_t>(r));
            }
            if (!args[1].is_int() && !args[1].is_bool()) {
                type_error(line, "'" + args[1].type_name() + "' object cannot be interpreted as an integer");
            }
            if (!v.is_float()) {
                return Value(v.to_integer());
            }
            std::int64_t digits = args[1].to_integer();
            double x = v.as_float();
            if (!std::isfinite(x) || digits > 340) {
                return v;
            }
            if (digits < 0) {
                double scale = std::pow(10.0, static_cast<double>(-digits));
                return Value(std::nearbyint(x / scale) * scale);
            }
            // printf rounds the exact binary value half-to-even, as the
            // source language does (round(2.675, 2) == 2.67).
            int precision = static_cast<int>(digits);
            int size = std::snprintf(nullptr, 0, "%.*f", precision, x);
            std::string text(static_cast<std::size_t>(size) + 1, '\0');
            std::snprintf(text.data(), text.size(), "%.*f", precision, x);
            return Value(std::strtod(text.c_str(), nullptr));
        }
        if (name == "sum") {
            expect_args(name, args, 1, 2, line);
            if (!args[0].is_list()) {
                type_error(line, "'" + args[0].type_name() + "' object is not iterable");
            }
            Value total = args.size() == 2 ? args[1] : Value(std::int64_t{0});
            for (const Value& item : args[0].as_list()) {
                total = binary(BinaryOperator::Add, total, item, line);
            }
            return total;
        }
        // min / max
        const std::vector<Value>* items = &args;
        if (args.size() == 1) {
            if (!args[0].is_list()) {
                type_error(line, "'" + args[0].type_name() + "' object is not iterable");
            }
            items = &args[0].as_list();
        }
        if (items->empty()) {
            raise("ValueError", line, name + "() arg is an empty sequence");
        }
        Value best = (*items)[0];
        for (std::size_t i = 1; i < items->size(); ++i) {
            const Value& candidate = (*items)[i];
            int c = order(candidate, best, CompareOperator::Lt, line);
            if ((name == "min" && c < 0) || (name == "max" && c > 0)) {
                best = candidate;
            }
        }
        return best;
    }

    const Ast& ast_;
    const IoScript& io_;
    std::int64_t step_limit_;
    std::int64_t steps_ = 0;
    std::size_t next_input_ = 0;
    int depth_ = 0;
    Frame globals_;
    std::map<const FuncDef*, std::set<std::string>> local_names_;
    ExecTrace trace_;
};

} // namespace

std::string_view to_string(FaultKind kind)
{
    switch (kind) {
    case FaultKind::ValueErrorFault: return "ValueErrorFault";
    case FaultKind::ZeroDivisionFault: return "ZeroDivisionFault";
    case FaultKind::EndOfInput: return "EndOfInput";
    case FaultKind::NameFault: return "NameFault";
    case FaultKind::TypeFault: return "TypeFault";
    case FaultKind::IndexFault: return "IndexFault";
    case FaultKind::RecursionFault: return "RecursionFault";
    case FaultKind::OverflowFault: return "OverflowFault";
    case FaultKind::StepLimitExceeded: return "StepLimitExceeded";
    }
    return "?";
}

std::string RuntimeFault::describe() const
{
    std::string out(to_string(kind));
    if (line > 0) {
        out += " at line " + std::to_string(line);
    }
    if (!exception_name.empty()) {
        out += ": " + exception_name;
        if (!message.empty()) {
            out += ": " + message;
        }
    } else if (!message.empty()) {
        out += ": " + message;
    }
    return out;
}

bool handler_catches(const std::vector<std::string>& filter_names, std::string_view exception_name)
{
    if (filter_names.empty()) {
        return true;
    }
    static const std::map<std::string_view, std::vector<std::string_view>, std::less<>> parents{
        {"ZeroDivisionError", {"ArithmeticError"}},
        {"OverflowError", {"ArithmeticError"}},
        {"IndexError", {"LookupError"}},
        {"UnboundLocalError", {"NameError"}},
        {"RecursionError", {"RuntimeError"}},
    };
    for (const std::string& f : filter_names) {
        if (f == exception_name || f == "Exception" || f == "BaseException") {
            return true;
        }
        auto it = parents.find(exception_name);
        if (it != parents.end() &&
            std::find(it->second.begin(), it->second.end(), f) != it->second.end()) {
            return true;
        }
    }
    return false;
}

std::optional<double> parse_float_text(std::string_view text)
{
    std::string_view s = trim(text);
    std::string_view body = s;
    bool negative = false;
    if (!body.empty() && (body.front() == '+' || body.front() == '-')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    if (iequals(body, "inf") || iequals(body, "infinity")) {
        return negative ? -HUGE_VAL : HUGE_VAL;
    }
    if (iequals(body, "nan")) {
        return std::nan("");
    }
    auto cleaned = strip_digit_separators(body);
    if (!cleaned || cleaned->empty()) {
        return std::nullopt;
    }
    // digits [. digits] [(e|E) [sign] digits], with at least one mantissa digit
    const std::string& c = *cleaned;
    std::size_t i = 0;
    std::size_t mantissa_digits = 0;
    while (i < c.size() && std::isdigit(static_cast<unsigned char>(c[i]))) {
        ++i;
        ++mantissa_digits;
    }
    if (i < c.size() && c[i] == '.') {
        ++i;
        while (i < c.size() && std::isdigit(static_cast<unsigned char>(c[i]))) {
            ++i;
            ++mantissa_digits;
        }
    }
    if (mantissa_digits == 0) {
        return std::nullopt;
    }
    if (i < c.size() && (c[i] == 'e' || c[i] == 'E')) {
        ++i;
        if (i < c.size() && (c[i] == '+' || c[i] == '-')) {
            ++i;
        }
        std::size_t exp_digits = 0;
        while (i < c.size() && std::isdigit(static_cast<unsigned char>(c[i]))) {
            ++i;
            ++exp_digits;
        }
        if (exp_digits == 0) {
            return std::nullopt;
        }
    }
    if (i != c.size()) {
        return std::nullopt;
    }
    double value = std::strtod(c.c_str(), nullptr);
    return negative ? -value : value;
}

std::optional<std::int64_t> parse_int_text(std::string_view text)
{
    std::int64_t out = 0;
    if (parse_int_checked(text, out) != IntParse::Ok) {
        return std::nullopt;
    }
    return out;
}

ExecTrace execute(const Ast& ast, const IoScript& io, std::int64_t step_limit)
{
    return Machine(ast, io, step_limit).run_module("__main__");
}

ExecTrace call_function(const Ast& ast, std::string_view name, std::vector<Value> args,
                        const IoScript& io, std::int64_t step_limit)
{
    bool defined = std::any_of(ast.root.body.begin(), ast.root.body.end(), [&](const Stmt& s) {
        const FuncDef* fn = s.as<FuncDef>();
        return fn != nullptr && fn->name == name;
    });
    if (!defined) {
        throw UnknownFunction(std::string(name));
    }
    return Machine(ast, io, step_limit).run_call(name, std::move(args));
}

} // namespace qlc::interp
