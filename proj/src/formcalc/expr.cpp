#include "fibrecontact/formcalc/expr.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fibrecontact::formcalc {

struct Expr::Node {
    Op op;
    std::size_t index = 0;
    Rational value;
    long exponent = 0;
    Expr a, b;
    // Leaves only: avoids recursive default construction of a and b.
    Node(Op o) : op(o), a(nullptr), b(nullptr) {}
};

Expr::Expr() : Expr(constant(0)) {}

Expr Expr::var(std::size_t index) {
    auto n = std::make_shared<Node>(Op::Var);
    n->index = index;
    return Expr(std::move(n));
}

Expr Expr::constant(const Rational& value) {
    auto n = std::make_shared<Node>(Op::Const);
    n->value = value;
    n->value.canonicalize();
    return Expr(std::move(n));
}

Expr Expr::pi() { return Expr(std::make_shared<Node>(Op::Pi)); }

#define FC_BINARY(name, OPC)                       \
    Expr Expr::name(Expr a, Expr b) {              \
        auto n = std::make_shared<Node>(OPC);      \
        n->a = std::move(a);                       \
        n->b = std::move(b);                       \
        return Expr(std::move(n));                 \
    }
FC_BINARY(add, Op::Add)
FC_BINARY(mul, Op::Mul)
FC_BINARY(div, Op::Div)
#undef FC_BINARY

#define FC_UNARY(name, OPC)                        \
    Expr Expr::name(Expr a) {                      \
        auto n = std::make_shared<Node>(OPC);      \
        n->a = std::move(a);                       \
        return Expr(std::move(n));                 \
    }
FC_UNARY(neg, Op::Neg)
FC_UNARY(sin, Op::Sin)
FC_UNARY(cos, Op::Cos)
FC_UNARY(exp, Op::Exp)
#undef FC_UNARY

Expr Expr::pow(Expr base, long exponent) {
    auto n = std::make_shared<Node>(Op::Pow);
    n->a = std::move(base);
    n->exponent = exponent;
    return Expr(std::move(n));
}

Op Expr::op() const { return node_->op; }
std::size_t Expr::var_index() const { return node_->index; }
const Rational& Expr::value() const { return node_->value; }
long Expr::exponent() const { return node_->exponent; }
const Expr& Expr::lhs() const { return node_->a; }
const Expr& Expr::rhs() const { return node_->b; }

bool Expr::is_zero() const { return op() == Op::Const && value() == 0; }
bool Expr::is_one() const { return op() == Op::Const && value() == 1; }

double Expr::eval(std::span<const double> x) const {
    const Node& n = *node_;
    switch (n.op) {
        case Op::Var: return x[n.index];
        case Op::Const: return n.value.get_d();
        case Op::Pi: return std::numbers::pi;
        case Op::Add: return n.a.eval(x) + n.b.eval(x);
        case Op::Mul: return n.a.eval(x) * n.b.eval(x);
        case Op::Div: return n.a.eval(x) / n.b.eval(x);
        case Op::Pow: {
            double base = n.a.eval(x);
            long k = n.exponent;
            double r = 1.0;
            for (long i = 0; i < std::abs(k); ++i) r *= base;
            return k < 0 ? 1.0 / r : r;
        }
        case Op::Neg: return -n.a.eval(x);
        case Op::Sin: return std::sin(n.a.eval(x));
        case Op::Cos: return std::cos(n.a.eval(x));
        case Op::Exp: return std::exp(n.a.eval(x));
    }
    return 0.0;
}

bool operator==(const Expr& a, const Expr& b) {
    if (a.node_ == b.node_) return true;
    if (a.op() != b.op()) return false;
    switch (a.op()) {
        case Op::Var: return a.var_index() == b.var_index();
        case Op::Const: return a.value() == b.value();
        case Op::Pi: return true;
        case Op::Add:
        case Op::Mul:
        case Op::Div: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
        case Op::Pow: return a.exponent() == b.exponent() && a.lhs() == b.lhs();
        case Op::Neg:
        case Op::Sin:
        case Op::Cos:
        case Op::Exp: return a.lhs() == b.lhs();
    }
    return false;
}

std::size_t Expr::arity() const {
    switch (op()) {
        case Op::Var: return var_index() + 1;
        case Op::Const:
        case Op::Pi: return 0;
        case Op::Add:
        case Op::Mul:
        case Op::Div: return std::max(lhs().arity(), rhs().arity());
        default: return lhs().arity();
    }
}

Expr simplify_add(const Expr& a, const Expr& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.is_const() && b.is_const()) return Expr::constant(a.value() + b.value());
    if (b.op() == Op::Neg) return simplify_sub(a, b.lhs());
    return Expr::add(a, b);
}

Expr simplify_sub(const Expr& a, const Expr& b) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return simplify_neg(b);
    if (a.is_const() && b.is_const()) return Expr::constant(a.value() - b.value());
    if (a == b) return Expr::constant(0);
    return Expr::add(a, simplify_neg(b));
}

Expr simplify_neg(const Expr& a) {
    if (a.is_const()) return Expr::constant(-a.value());
    if (a.op() == Op::Neg) return a.lhs();
    return Expr::neg(a);
}

Expr simplify_mul(const Expr& a, const Expr& b) {
    if (a.is_zero() || b.is_zero()) return Expr::constant(0);
    if (a.is_one()) return b;
    if (b.is_one()) return a;
    if (a.is_const() && b.is_const()) return Expr::constant(a.value() * b.value());
    if (a.is_const() && a.value() == -1) return simplify_neg(b);
    if (b.is_const() && b.value() == -1) return simplify_neg(a);
    if (a.op() == Op::Neg && b.op() == Op::Neg) return simplify_mul(a.lhs(), b.lhs());
    if (a.op() == Op::Neg) return simplify_neg(simplify_mul(a.lhs(), b));
    if (b.op() == Op::Neg) return simplify_neg(simplify_mul(a, b.lhs()));
    // Keep constants in front.
    if (b.is_const()) return Expr::mul(b, a);
    return Expr::mul(a, b);
}

Expr simplify_div(const Expr& a, const Expr& b) {
    if (b.is_zero()) throw std::domain_error("division by the constant 0");
    if (a.is_zero()) return Expr::constant(0);
    if (b.is_one()) return a;
    if (a.is_const() && b.is_const()) return Expr::constant(a.value() / b.value());
    return Expr::div(a, b);
}

Expr simplify_pow(const Expr& a, long k) {
    if (k == 0) return Expr::constant(1);
    if (k == 1) return a;
    if (a.is_const()) {
        if (a.value() == 0 && k < 0) throw std::domain_error("0 raised to a negative power");
        Rational r(1);
        for (long i = 0; i < std::abs(k); ++i) r *= a.value();
        return Expr::constant(k < 0 ? Rational(1 / r) : r);
    }
    return Expr::pow(a, k);
}

Expr simplify(const Expr& e) {
    switch (e.op()) {
        case Op::Var:
        case Op::Const:
        case Op::Pi: return e;
        case Op::Add: return simplify_add(simplify(e.lhs()), simplify(e.rhs()));
        case Op::Mul: return simplify_mul(simplify(e.lhs()), simplify(e.rhs()));
        case Op::Div: return simplify_div(simplify(e.lhs()), simplify(e.rhs()));
        case Op::Pow: return simplify_pow(simplify(e.lhs()), e.exponent());
        case Op::Neg: return simplify_neg(simplify(e.lhs()));
        case Op::Sin: {
            auto a = simplify(e.lhs());
            return a.is_zero() ? Expr::constant(0) : Expr::sin(a);
        }
        case Op::Cos: {
            auto a = simplify(e.lhs());
            return a.is_zero() ? Expr::constant(1) : Expr::cos(a);
        }
        case Op::Exp: {
            auto a = simplify(e.lhs());
            return a.is_zero() ? Expr::constant(1) : Expr::exp(a);
        }
    }
    return e;
}

Expr derivative(const Expr& e, std::size_t i) {
    switch (e.op()) {
        case Op::Var: return Expr::constant(e.var_index() == i ? 1 : 0);
        case Op::Const:
        case Op::Pi: return Expr::constant(0);
        case Op::Add: return simplify_add(derivative(e.lhs(), i), derivative(e.rhs(), i));
        case Op::Mul:
            return simplify_add(simplify_mul(derivative(e.lhs(), i), e.rhs()),
                                simplify_mul(e.lhs(), derivative(e.rhs(), i)));
        case Op::Div: {
            // (u/v)' = u'/v - u v' / v^2
            auto du = derivative(e.lhs(), i), dv = derivative(e.rhs(), i);
            return simplify_sub(simplify_div(du, e.rhs()),
                                simplify_div(simplify_mul(e.lhs(), dv), simplify_pow(e.rhs(), 2)));
        }
        case Op::Pow: {
            long k = e.exponent();
            return simplify_mul(simplify_mul(Expr::constant(k), simplify_pow(e.lhs(), k - 1)),
                                derivative(e.lhs(), i));
        }
        case Op::Neg: return simplify_neg(derivative(e.lhs(), i));
        case Op::Sin: return simplify_mul(simplify(Expr::cos(e.lhs())), derivative(e.lhs(), i));
        case Op::Cos: return simplify_neg(simplify_mul(simplify(Expr::sin(e.lhs())), derivative(e.lhs(), i)));
        case Op::Exp: return simplify_mul(e, derivative(e.lhs(), i));
    }
    return Expr::constant(0);
}

Expr substitute(const Expr& e, std::span<const Expr> repl) {
    switch (e.op()) {
        case Op::Var:
            if (e.var_index() >= repl.size()) throw std::out_of_range("no replacement for variable");
            return repl[e.var_index()];
        case Op::Const:
        case Op::Pi: return e;
        case Op::Add: return Expr::add(substitute(e.lhs(), repl), substitute(e.rhs(), repl));
        case Op::Mul: return Expr::mul(substitute(e.lhs(), repl), substitute(e.rhs(), repl));
        case Op::Div: return Expr::div(substitute(e.lhs(), repl), substitute(e.rhs(), repl));
        case Op::Pow: return Expr::pow(substitute(e.lhs(), repl), e.exponent());
        case Op::Neg: return Expr::neg(substitute(e.lhs(), repl));
        case Op::Sin: return Expr::sin(substitute(e.lhs(), repl));
        case Op::Cos: return Expr::cos(substitute(e.lhs(), repl));
        case Op::Exp: return Expr::exp(substitute(e.lhs(), repl));
    }
    return e;
}

std::string to_text(const Expr& e, std::span<const std::string> names) {
    switch (e.op()) {
        case Op::Var:
            return e.var_index() < names.size() ? names[e.var_index()] : "x" + std::to_string(e.var_index());
        case Op::Const: {
            const Rational& v = e.value();
            if (v.get_den() == 1 && v >= 0) return v.get_num().get_str();
            return "(" + to_string(v) + ")";
        }
        case Op::Pi: return "pi";
        case Op::Add: return "(" + to_text(e.lhs(), names) + " + " + to_text(e.rhs(), names) + ")";
        case Op::Mul: return "(" + to_text(e.lhs(), names) + " * " + to_text(e.rhs(), names) + ")";
        case Op::Div: return "(" + to_text(e.lhs(), names) + " / " + to_text(e.rhs(), names) + ")";
        case Op::Pow: return "(" + to_text(e.lhs(), names) + "^" + std::to_string(e.exponent()) + ")";
        case Op::Neg: return "(-" + to_text(e.lhs(), names) + ")";
        case Op::Sin: return "sin(" + to_text(e.lhs(), names) + ")";
        case Op::Cos: return "cos(" + to_text(e.lhs(), names) + ")";
        case Op::Exp: return "exp(" + to_text(e.lhs(), names) + ")";
    }
    return "?";
}

}  // namespace fibrecontact::formcalc
