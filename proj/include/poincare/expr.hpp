#pragma once

// Arithmetic expressions in x and y: numbers, pi, + - * / ^, unary minus and
// the functions sin, cos, exp, abs, sign. No implicit multiplication.

#include "poincare/error.hpp"
#include "poincare/geom.hpp"

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <variant>

namespace poincare::expr {

struct Node;
using NodePtr = std::shared_ptr<const Node>;

enum class Func { Sin, Cos, Exp, Abs, Sign };

struct Number {
    double value;
};
struct Variable {
    char name; // 'x' or 'y'
};
struct Pi {};
struct Negate {
    NodePtr operand;
};
struct Binary {
    char op; // + - * / ^
    NodePtr lhs;
    NodePtr rhs;
};
struct Call {
    Func func;
    NodePtr arg;
};

struct Node {
    std::variant<Number, Variable, Pi, Negate, Binary, Call> data;
};

/// Immutable expression tree.
class Ast {
public:
    explicit Ast(NodePtr root) : root_(std::move(root)) {}
    const Node& root() const { return *root_; }
    const NodePtr& root_ptr() const { return root_; }

    friend bool operator==(const Ast& a, const Ast& b);

private:
    NodePtr root_;
};

class ParseError : public Error {
public:
    ParseError(std::size_t offset, const std::string& what);
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class EvalError : public Error {
public:
    explicit EvalError(const std::string& what) : Error(ErrorCode::Eval, what) {}
};

Ast parse(std::string_view src);

/// Throws EvalError on division by zero or a non-finite result.
double eval(const Ast& ast, double x, double y);

/// Fully parenthesized text that parses back to the same tree.
std::string print(const Ast& ast);

const char* func_name(Func f);

ScalarField to_field(const Ast& ast);

} // namespace poincare::expr
