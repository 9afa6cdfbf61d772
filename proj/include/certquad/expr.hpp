#ifndef CERTQUAD_EXPR_HPP
#define CERTQUAD_EXPR_HPP

#include "certquad/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace certquad {

enum class NodeKind : std::uint8_t {
    Constant,
    Variable,
    Add,
    Sub,
    Mul,
    Div,
    Pow,  // integer exponent only
    Exp,
    Log,
    Sin,
    Cos,
    Sqrt,
    Neg,
};

// One node of the expression tree.  Nodes live in an arena inside
// ExpressionAst; children always precede their parent, so a single
// forward scan evaluates the whole tree.
struct ExprNode {
    NodeKind kind;
    std::int32_t lhs = -1;
    std::int32_t rhs = -1;
    int exponent = 0;        // Pow only
    double value = 0.0;      // Constant only, cached from `exact`
    Rational exact;          // Constant only; every literal is a rational
};

// Immutable parsed expression in the single variable `x`.
class ExpressionAst {
public:
    const std::vector<ExprNode>& nodes() const { return nodes_; }
    std::int32_t root() const { return root_; }
    const std::string& source() const { return source_; }

    // True when the tree uses only {constant, x, +, -, *, neg, pow(e>=0)},
    // i.e. it is a polynomial with exactly representable coefficients.
    bool exact_capable() const { return exact_capable_; }

    double operator()(double t) const;  // plain value, shorthand for order-0 jet

private:
    friend ExpressionAst parse(const std::string&);
    std::vector<ExprNode> nodes_;
    std::int32_t root_ = -1;
    bool exact_capable_ = false;
    std::string source_;
};

// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | atom ('^' integer)?
//   atom   := number | 'x' | func '(' expr ')' | '(' expr ')'
//   func   := exp | log | sin | cos | sqrt
//   number := digits ['.' digits] | digits '/' digits   (rational literal)
// Precedence is pow > unary minus > mul/div > add/sub, so "-x^2" is -(x^2).
// '^' accepts an integer literal or a parenthesised constant expression
// that folds to an integer; anything else (e.g. "x^(1/2)") is rejected.
ExpressionAst parse(const std::string& source);

}  // namespace certquad

#endif
