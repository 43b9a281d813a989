#pragma once

// Immutable expression trees over the coordinates of a chart. Variables are
// referenced by index into the owning chart; names live on the chart.

#include "fibrecontact/rational.hpp"

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace fibrecontact::formcalc {

enum class Op { Var, Const, Pi, Add, Mul, Div, Pow, Neg, Sin, Cos, Exp };

class Expr {
public:
    /// The constant 0.
    Expr();

    static Expr var(std::size_t index);
    static Expr constant(const Rational& value);
    static Expr constant(long value) { return constant(Rational(value)); }
    static Expr pi();
    static Expr add(Expr a, Expr b);
    static Expr mul(Expr a, Expr b);
    static Expr div(Expr a, Expr b);
    static Expr pow(Expr base, long exponent);
    static Expr neg(Expr a);
    static Expr sin(Expr a);
    static Expr cos(Expr a);
    static Expr exp(Expr a);

    Op op() const;
    std::size_t var_index() const;       // Var only
    const Rational& value() const;       // Const only
    long exponent() const;               // Pow only
    const Expr& lhs() const;             // first operand
    const Expr& rhs() const;             // second operand of Add, Mul, Div

    bool is_const() const { return op() == Op::Const; }
    bool is_zero() const;
    bool is_one() const;

    double eval(std::span<const double> point) const;

    /// Structural equality.
    friend bool operator==(const Expr& a, const Expr& b);

    /// Largest variable index used plus one (0 when the expression is closed).
    std::size_t arity() const;

private:
    struct Node;
    std::shared_ptr<const Node> node_;
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
};

/// Smart constructors that fold constants and drop neutral elements.
Expr simplify_add(const Expr& a, const Expr& b);
Expr simplify_sub(const Expr& a, const Expr& b);
Expr simplify_mul(const Expr& a, const Expr& b);
Expr simplify_div(const Expr& a, const Expr& b);
Expr simplify_neg(const Expr& a);
Expr simplify_pow(const Expr& a, long k);

/// Bottom-up constant folding and flattening of neutral elements.
Expr simplify(const Expr& e);

/// Symbolic partial derivative with respect to variable `index`.
Expr derivative(const Expr& e, std::size_t index);

/// Replaces variable i by replacements[i]. Throws std::out_of_range when a
/// variable has no replacement.
Expr substitute(const Expr& e, std::span<const Expr> replacements);

/// Fully parenthesized text that the parser reads back to an equal tree.
std::string to_text(const Expr& e, std::span<const std::string> names);

}  // namespace fibrecontact::formcalc
