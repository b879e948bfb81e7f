#include "shocklab/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "shocklab/common.hpp"

namespace shocklab {

enum class Op { Num, Var, Add, Sub, Mul, Div, Pow, Neg, Exp, Sin };

struct Expr::Node {
    Op op;
    double value = 0.0;
    std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

struct Parser {
    const std::string& s;
    size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ConfigError("expression parse error at column " + std::to_string(pos + 1) + ": " +
                          msg + " in \"" + s + "\"");
    }
    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool consume(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    NodePtr make(Op op, NodePtr a = nullptr, NodePtr b = nullptr, double v = 0.0) {
        auto n = std::make_shared<Expr::Node>();
        n->op = op;
        n->value = v;
        n->a = std::move(a);
        n->b = std::move(b);
        return n;
    }

    NodePtr parse_expr() {  // additive
        NodePtr lhs = parse_term();
        for (;;) {
            if (consume('+'))
                lhs = make(Op::Add, lhs, parse_term());
            else if (consume('-'))
                lhs = make(Op::Sub, lhs, parse_term());
            else
                return lhs;
        }
    }
    NodePtr parse_term() {  // multiplicative
        NodePtr lhs = parse_unary();
        for (;;) {
            if (consume('*'))
                lhs = make(Op::Mul, lhs, parse_unary());
            else if (consume('/'))
                lhs = make(Op::Div, lhs, parse_unary());
            else
                return lhs;
        }
    }
    NodePtr parse_unary() {
        if (consume('-')) return make(Op::Neg, parse_unary());
        if (consume('+')) return parse_unary();
        return parse_power();
    }
    NodePtr parse_power() {  // right-associative
        NodePtr base = parse_atom();
        if (consume('^')) return make(Op::Pow, base, parse_unary());
        return base;
    }
    NodePtr parse_atom() {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end of input");
        char c = s[pos];
        if (c == '(') {
            ++pos;
            NodePtr inner = parse_expr();
            if (!consume(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            char* end = nullptr;
            double v = std::strtod(s.c_str() + pos, &end);
            if (end == s.c_str() + pos) fail("bad number");
            pos = end - s.c_str();
            return make(Op::Num, nullptr, nullptr, v);
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t start = pos;
            while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) ++pos;
            std::string name = s.substr(start, pos - start);
            if (name == "r") return make(Op::Var);
            if (name == "exp" || name == "sin") {
                if (!consume('(')) fail("expected '(' after " + name);
                NodePtr arg = parse_expr();
                if (!consume(')')) fail("expected ')'");
                return make(name == "exp" ? Op::Exp : Op::Sin, arg);
            }
            pos = start;
            fail("unknown identifier '" + name + "'");
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

double eval_node(const Expr::Node& n, double r) {
    switch (n.op) {
        case Op::Num: return n.value;
        case Op::Var: return r;
        case Op::Add: return eval_node(*n.a, r) + eval_node(*n.b, r);
        case Op::Sub: return eval_node(*n.a, r) - eval_node(*n.b, r);
        case Op::Mul: return eval_node(*n.a, r) * eval_node(*n.b, r);
        case Op::Div: return eval_node(*n.a, r) / eval_node(*n.b, r);
        case Op::Pow: return std::pow(eval_node(*n.a, r), eval_node(*n.b, r));
        case Op::Neg: return -eval_node(*n.a, r);
        case Op::Exp: return std::exp(eval_node(*n.a, r));
        case Op::Sin: return std::sin(eval_node(*n.a, r));
    }
    return 0.0;
}

}  // namespace

Expr Expr::parse(const std::string& text) {
    Parser p{text};
    Expr e;
    e.root_ = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    e.src_ = text;
    return e;
}

double Expr::eval(double r) const { return eval_node(*root_, r); }

}  // namespace shocklab
