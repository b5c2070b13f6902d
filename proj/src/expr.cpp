#include "poincare/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace poincare::expr {

ParseError::ParseError(std::size_t offset, const std::string& what)
    : Error(ErrorCode::Parse, what + " at offset " + std::to_string(offset)), offset_(offset)
{
}

const char* func_name(Func f)
{
    switch (f) {
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Exp: return "exp";
    case Func::Abs: return "abs";
    case Func::Sign: return "sign";
    }
    return "?";
}

namespace {

NodePtr make(auto&& alt) { return std::make_shared<const Node>(Node{std::forward<decltype(alt)>(alt)}); }

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    Ast run()
    {
        NodePtr root = expression(1);
        skip_space();
        if (pos_ != src_.size())
            throw ParseError(pos_, "unexpected '" + std::string(1, src_[pos_]) + "'");
        return Ast(std::move(root));
    }

private:
    static int precedence(char op)
    {
        switch (op) {
        case '+':
        case '-': return 1;
        case '*':
        case '/': return 2;
        case '^': return 4;
        default: return 0;
        }
    }

    void skip_space()
    {
        while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t'))
            ++pos_;
    }

    NodePtr expression(int min_prec)
    {
        NodePtr lhs = unary();
        for (;;) {
            skip_space();
            if (pos_ >= src_.size())
                return lhs;
            const char op = src_[pos_];
            const int prec = precedence(op);
            if (prec == 0 || prec < min_prec)
                return lhs;
            ++pos_;
            NodePtr rhs = expression(op == '^' ? prec : prec + 1);
            lhs = make(Binary{op, std::move(lhs), std::move(rhs)});
        }
    }

    // Unary minus binds tighter than * and looser than ^.
    NodePtr unary()
    {
        skip_space();
        if (pos_ < src_.size() && src_[pos_] == '-') {
            ++pos_;
            return make(Negate{expression(4)});
        }
        return primary();
    }

    NodePtr primary()
    {
        skip_space();
        if (pos_ >= src_.size())
            throw ParseError(pos_, "expected an operand");
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr inner = expression(1);
            skip_space();
            if (pos_ >= src_.size() || src_[pos_] != ')')
                throw ParseError(pos_, "expected ')'");
            ++pos_;
            return inner;
        }
        if ((c >= '0' && c <= '9') || c == '.')
            return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
            return identifier();
        throw ParseError(pos_, "unexpected '" + std::string(1, c) + "'");
    }

    NodePtr number()
    {
        const std::size_t start = pos_;
        double value = 0.0;
        auto [end, ec] = std::from_chars(src_.data() + pos_, src_.data() + src_.size(), value,
                                         std::chars_format::general);
        if (ec != std::errc() || !std::isfinite(value))
            throw ParseError(start, "malformed number");
        pos_ = static_cast<std::size_t>(end - src_.data());
        return make(Number{value});
    }

    NodePtr identifier()
    {
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            ++pos_;
        const std::string_view name = src_.substr(start, pos_ - start);
        if (name == "x" || name == "y")
            return make(Variable{name[0]});
        if (name == "pi")
            return make(Pi{});
        Func f;
        if (name == "sin")
            f = Func::Sin;
        else if (name == "cos")
            f = Func::Cos;
        else if (name == "exp")
            f = Func::Exp;
        else if (name == "abs")
            f = Func::Abs;
        else if (name == "sign")
            f = Func::Sign;
        else
            throw ParseError(start, "unknown identifier '" + std::string(name) + "'");
        skip_space();
        if (pos_ >= src_.size() || src_[pos_] != '(')
            throw ParseError(pos_, "expected '(' after " + std::string(name));
        ++pos_;
        NodePtr arg = expression(1);
        skip_space();
        if (pos_ >= src_.size() || src_[pos_] != ')')
            throw ParseError(pos_, "expected ')'");
        ++pos_;
        return make(Call{f, std::move(arg)});
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

double evaluate(const Node& n, double x, double y)
{
    struct Visitor {
        double x, y;
        double operator()(const Number& v) const { return v.value; }
        double operator()(const Variable& v) const { return v.name == 'x' ? x : y; }
        double operator()(const Pi&) const { return std::numbers::pi; }
        double operator()(const Negate& v) const { return -evaluate(*v.operand, x, y); }
        double operator()(const Binary& v) const
        {
            const double a = evaluate(*v.lhs, x, y);
            const double b = evaluate(*v.rhs, x, y);
            switch (v.op) {
            case '+': return a + b;
            case '-': return a - b;
            case '*': return a * b;
            case '/':
                if (b == 0.0)
                    throw EvalError("division by zero");
                return a / b;
            default: return std::pow(a, b);
            }
        }
        double operator()(const Call& v) const
        {
            const double a = evaluate(*v.arg, x, y);
            switch (v.func) {
            case Func::Sin: return std::sin(a);
            case Func::Cos: return std::cos(a);
            case Func::Exp: return std::exp(a);
            case Func::Abs: return std::abs(a);
            case Func::Sign: return a > 0.0 ? 1.0 : (a < 0.0 ? -1.0 : 0.0);
            }
            return a;
        }
    };
    const double r = std::visit(Visitor{x, y}, n.data);
    if (!std::isfinite(r))
        throw EvalError("non-finite value");
    return r;
}

bool equal(const Node& a, const Node& b)
{
    if (a.data.index() != b.data.index())
        return false;
    if (auto* v = std::get_if<Number>(&a.data))
        return v->value == std::get<Number>(b.data).value;
    if (auto* v = std::get_if<Variable>(&a.data))
        return v->name == std::get<Variable>(b.data).name;
    if (std::holds_alternative<Pi>(a.data))
        return true;
    if (auto* v = std::get_if<Negate>(&a.data))
        return equal(*v->operand, *std::get<Negate>(b.data).operand);
    if (auto* v = std::get_if<Binary>(&a.data)) {
        const Binary& w = std::get<Binary>(b.data);
        return v->op == w.op && equal(*v->lhs, *w.lhs) && equal(*v->rhs, *w.rhs);
    }
    const Call& v = std::get<Call>(a.data);
    const Call& w = std::get<Call>(b.data);
    return v.func == w.func && equal(*v.arg, *w.arg);
}

void print_to(const Node& n, std::string& out)
{
    if (auto* v = std::get_if<Number>(&n.data)) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", v->value);
        out += buf;
    } else if (auto* v = std::get_if<Variable>(&n.data)) {
        out += v->name;
    } else if (std::holds_alternative<Pi>(n.data)) {
        out += "pi";
    } else if (auto* v = std::get_if<Negate>(&n.data)) {
        out += "(-";
        print_to(*v->operand, out);
        out += ')';
    } else if (auto* v = std::get_if<Binary>(&n.data)) {
        out += '(';
        print_to(*v->lhs, out);
        out += ' ';
        out += v->op;
        out += ' ';
        print_to(*v->rhs, out);
        out += ')';
    } else {
        const Call& c = std::get<Call>(n.data);
        out += func_name(c.func);
        out += '(';
        print_to(*c.arg, out);
        out += ')';
    }
}

} // namespace

bool operator==(const Ast& a, const Ast& b) { return equal(a.root(), b.root()); }

Ast parse(std::string_view src) { return Parser(src).run(); }

double eval(const Ast& ast, double x, double y) { return evaluate(ast.root(), x, y); }

std::string print(const Ast& ast)
{
    std::string out;
    print_to(ast.root(), out);
    return out;
}

ScalarField to_field(const Ast& ast)
{
    return ScalarField([ast](double x, double y) { return eval(ast, x, y); });
}

} // namespace poincare::expr
