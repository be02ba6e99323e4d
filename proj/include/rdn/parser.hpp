#pragma once

// Recursive-descent parser for series expressions:
//   expr   := term (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*
//   unary  := '-' unary | factor
//   factor := atom ('^' uint)?
//   atom   := integer | 'x' | '(' expr ')' | 'sqrt(' expr ')' | builtin
// Whitespace is insignificant. Integer/integer quotients of literals fold
// into rational literals, so "3/4" is a constant and "-3" a negative one.

#include <memory>
#include <string>
#include <string_view>

#include "rdn/errors.hpp"
#include "rdn/series.hpp"

namespace rdn {

struct SeriesExpr {
    enum class Kind { Rational, Var, Add, Sub, Mul, Div, Pow, Sqrt, Builtin };
    Kind kind;
    Rat value;             // Rational
    unsigned exponent = 0; // Pow
    std::string name;      // Builtin
    std::unique_ptr<SeriesExpr> lhs, rhs;
};

using ExprPtr = std::unique_ptr<SeriesExpr>;

inline bool expr_equal(const SeriesExpr& a, const SeriesExpr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case SeriesExpr::Kind::Rational: return a.value == b.value;
        case SeriesExpr::Kind::Var: return true;
        case SeriesExpr::Kind::Builtin: return a.name == b.name;
        case SeriesExpr::Kind::Sqrt: return expr_equal(*a.lhs, *b.lhs);
        case SeriesExpr::Kind::Pow:
            return a.exponent == b.exponent && expr_equal(*a.lhs, *b.lhs);
        default:
            return expr_equal(*a.lhs, *b.lhs) && expr_equal(*a.rhs, *b.rhs);
    }
}

inline const char* const kBuiltinNames[] = {"pascal_g", "pascal_f", "aigner_g",
                                            "catalan"};

inline bool is_builtin(std::string_view name) {
    for (const char* b : kBuiltinNames)
        if (name == b) return true;
    return false;
}

namespace detail {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    ExprPtr run() {
        ExprPtr e = expr();
        skip_ws();
        if (pos_ != text_.size()) error("trailing input");
        return e;
    }

private:
    std::string_view text_;
    size_t pos_ = 0;

    [[noreturn]] void error(const std::string& what) {
        fail("SyntaxError", what + " at byte " + std::to_string(pos_));
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    static ExprPtr node(SeriesExpr::Kind k) {
        auto e = std::make_unique<SeriesExpr>();
        e->kind = k;
        return e;
    }

    static ExprPtr binary(SeriesExpr::Kind k, ExprPtr l, ExprPtr r) {
        // quotients and products of literals fold into rational literals
        if (l->kind == SeriesExpr::Kind::Rational &&
            r->kind == SeriesExpr::Kind::Rational) {
            if (k == SeriesExpr::Kind::Div) {
                if (sgn(r->value) == 0)
                    fail("SyntaxError", "literal division by zero");
                auto e = node(SeriesExpr::Kind::Rational);
                e->value = Rat(l->value / r->value);
                return e;
            }
        }
        ExprPtr e = node(k);
        e->lhs = std::move(l);
        e->rhs = std::move(r);
        return e;
    }

    ExprPtr expr() {
        ExprPtr e = term();
        for (;;) {
            if (eat('+'))
                e = binary(SeriesExpr::Kind::Add, std::move(e), term());
            else if (eat('-'))
                e = binary(SeriesExpr::Kind::Sub, std::move(e), term());
            else
                return e;
        }
    }

    ExprPtr term() {
        ExprPtr e = unary();
        for (;;) {
            if (eat('*'))
                e = binary(SeriesExpr::Kind::Mul, std::move(e), unary());
            else if (eat('/'))
                e = binary(SeriesExpr::Kind::Div, std::move(e), unary());
            else
                return e;
        }
    }

    ExprPtr unary() {
        if (eat('-')) {
            ExprPtr inner = unary();
            if (inner->kind == SeriesExpr::Kind::Rational) {
                inner->value = Rat(-inner->value);
                return inner;
            }
            ExprPtr zero = node(SeriesExpr::Kind::Rational);
            zero->value = Rat(0);
            return binary(SeriesExpr::Kind::Sub, std::move(zero), std::move(inner));
        }
        return factor();
    }

    ExprPtr factor() {
        ExprPtr base = atom();
        if (eat('^')) {
            skip_ws();
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                error("expected a non-negative integer exponent");
            unsigned long e = 0;
            while (pos_ < text_.size() &&
                   std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                e = e * 10 + unsigned(text_[pos_] - '0');
                if (e > 1u << 20) error("exponent too large");
                ++pos_;
            }
            ExprPtr p = node(SeriesExpr::Kind::Pow);
            p->exponent = unsigned(e);
            p->lhs = std::move(base);
            return p;
        }
        return base;
    }

    ExprPtr atom() {
        skip_ws();
        if (pos_ >= text_.size()) error("unexpected end of input");
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (pos_ < text_.size() &&
                   std::isdigit(static_cast<unsigned char>(text_[pos_])))
                digits += text_[pos_++];
            ExprPtr e = node(SeriesExpr::Kind::Rational);
            e->value = rat_from_string(digits);
            return e;
        }
        if (c == '(') {
            ++pos_;
            ExprPtr e = expr();
            if (!eat(')')) error("expected ')'");
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string ident;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                    text_[pos_] == '_'))
                ident += text_[pos_++];
            if (ident == "x") return node(SeriesExpr::Kind::Var);
            if (ident == "sqrt") {
                if (!eat('(')) error("expected '(' after sqrt");
                ExprPtr e = expr();
                if (!eat(')')) error("expected ')'");
                ExprPtr s = node(SeriesExpr::Kind::Sqrt);
                s->lhs = std::move(e);
                return s;
            }
            if (is_builtin(ident)) {
                ExprPtr b = node(SeriesExpr::Kind::Builtin);
                b->name = ident;
                return b;
            }
            pos_ -= ident.size();
            error("unknown identifier '" + ident + "'");
        }
        error(std::string("unexpected character '") + c + "'");
    }
};

} // namespace detail

inline ExprPtr parse(std::string_view text) { return detail::Parser(text).run(); }

/// Deterministic re-parseable rendering: composite operands are always
/// parenthesized.
inline std::string print_expr(const SeriesExpr& e) {
    switch (e.kind) {
        case SeriesExpr::Kind::Rational: return e.value.get_str();
        case SeriesExpr::Kind::Var: return "x";
        case SeriesExpr::Kind::Builtin: return e.name;
        case SeriesExpr::Kind::Sqrt: return "sqrt(" + print_expr(*e.lhs) + ")";
        case SeriesExpr::Kind::Pow: {
            const SeriesExpr& b = *e.lhs;
            bool atom = b.kind == SeriesExpr::Kind::Var ||
                        b.kind == SeriesExpr::Kind::Builtin ||
                        (b.kind == SeriesExpr::Kind::Rational && sgn(b.value) >= 0);
            std::string base = print_expr(b);
            if (!atom) base = "(" + base + ")";
            return base + "^" + std::to_string(e.exponent);
        }
        default: {
            const char* op = e.kind == SeriesExpr::Kind::Add   ? " + "
                             : e.kind == SeriesExpr::Kind::Sub ? " - "
                             : e.kind == SeriesExpr::Kind::Mul ? " * "
                                                               : " / ";
            return "(" + print_expr(*e.lhs) + op + print_expr(*e.rhs) + ")";
        }
    }
}

namespace detail {

template <class K>
Series<K> builtin_series(const std::string& name, int deg, double tol) {
    const K one = field_ops<K>::one();
    if (name == "pascal_g" || name == "pascal_f") {
        Series<K> g(deg);
        for (int i = 0; i <= deg; ++i) g.coeff(i) = one;
        if (name == "pascal_g") return g;
        return shift_up(truncate_to(g, deg - 1), 1);
    }
    if (name == "catalan") {
        // c_{n+1} = sum_i c_i c_{n-i}
        Series<K> c(deg);
        c.coeff(0) = one;
        for (int n = 0; n < deg; ++n) {
            K acc = field_ops<K>::zero();
            for (int i = 0; i <= n; ++i) acc = K(acc + c[i] * c[n - i]);
            c.coeff(n + 1) = acc;
        }
        return c;
    }
    if (name == "aigner_g") {
        // (1 + x - sqrt(1 - 2x - 3x^2)) / (2x)
        Series<K> radicand(deg + 1);
        radicand.coeff(0) = one;
        radicand.coeff(1) = field_ops<K>::from_long(-2);
        radicand.coeff(2) = field_ops<K>::from_long(-3);
        Series<K> num(deg + 1);
        num.coeff(0) = one;
        num.coeff(1) = one;
        num = num - nth_root_unit(radicand, 2, tol);
        Series<K> half = Series<K>::constant(
            K(one / field_ops<K>::from_long(2)), deg);
        return half * shift_down(num, 1);
    }
    fail("UnknownIdentifier", "no builtin named '" + name + "'");
}

template <class K>
Series<K> eval_node(const SeriesExpr& e, int deg, double tol) {
    switch (e.kind) {
        case SeriesExpr::Kind::Rational:
            return Series<K>::constant(field_ops<K>::from_rat(e.value), deg);
        case SeriesExpr::Kind::Var: return Series<K>::x(deg);
        case SeriesExpr::Kind::Builtin: return builtin_series<K>(e.name, deg, tol);
        case SeriesExpr::Kind::Add:
            return eval_node<K>(*e.lhs, deg, tol) + eval_node<K>(*e.rhs, deg, tol);
        case SeriesExpr::Kind::Sub:
            return eval_node<K>(*e.lhs, deg, tol) - eval_node<K>(*e.rhs, deg, tol);
        case SeriesExpr::Kind::Mul:
            return eval_node<K>(*e.lhs, deg, tol) * eval_node<K>(*e.rhs, deg, tol);
        case SeriesExpr::Kind::Div:
            // common-order cancellation: x-divisions cost truncation
            // degrees, covered by the evaluation guard
            return div_cancel(eval_node<K>(*e.lhs, deg, tol),
                              eval_node<K>(*e.rhs, deg, tol), tol);
        case SeriesExpr::Kind::Pow:
            return pow_u(eval_node<K>(*e.lhs, deg, tol), e.exponent);
        case SeriesExpr::Kind::Sqrt: {
            Series<K> a = eval_node<K>(*e.lhs, deg, tol);
            if (!field_ops<K>::eq(a[0], field_ops<K>::one(), tol))
                fail("ConstantTermNotOne", "sqrt requires constant term 1");
            return nth_root_unit(a, 2, tol);
        }
    }
    fail("SyntaxError", "corrupt expression node");
}

} // namespace detail

inline constexpr int kEvalGuardDegrees = 16;

/// Evaluate at the requested truncation degree. Internally the tree is
/// evaluated with guard degrees so that order-cancelling divisions still
/// deliver every requested coefficient; an expression consuming the whole
/// guard is reported instead of silently truncated.
template <class K>
Series<K> evaluate(const SeriesExpr& e, int deg, double tol = kDefaultTol) {
    Series<K> r = detail::eval_node<K>(e, deg + kEvalGuardDegrees, tol);
    if (r.degree() < deg)
        fail("TruncationLoss",
             "expression loses more than " + std::to_string(kEvalGuardDegrees) +
                 " guard degrees");
    return truncate_to(r, deg);
}

template <class K>
Series<K> evaluate(const std::string& text, int deg, double tol = kDefaultTol) {
    return evaluate<K>(*parse(text), deg, tol);
}

} // namespace rdn
