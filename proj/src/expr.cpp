#include "certquad/expr.hpp"

#include "certquad/errors.hpp"
#include "certquad/jet.hpp"

#include <cctype>
#include <cmath>
#include <optional>

namespace certquad {

namespace {

constexpr int kMaxExponent = 1024;

bool polynomial_node(const ExprNode& n) {
    switch (n.kind) {
        case NodeKind::Constant:
        case NodeKind::Variable:
        case NodeKind::Add:
        case NodeKind::Sub:
        case NodeKind::Mul:
        case NodeKind::Neg:
            return true;
        case NodeKind::Pow:
            return n.exponent >= 0;
        default:
            return false;
    }
}

class Parser {
public:
    explicit Parser(const std::string& src) : src_(src) {}

    std::int32_t run() {
        if (src_.empty()) throw ParseError("empty expression", 0);
        const std::int32_t root = parse_expr();
        skip_ws();
        if (pos_ != src_.size()) throw ParseError("unexpected trailing input", pos_);
        return root;
    }

    std::vector<ExprNode> take_nodes() { return std::move(nodes_); }

private:
    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    bool eat(char c) {
        if (peek() == c) { ++pos_; return true; }
        return false;
    }

    std::int32_t push(ExprNode n) {
        nodes_.push_back(std::move(n));
        return static_cast<std::int32_t>(nodes_.size() - 1);
    }

    std::int32_t push_const(Rational r) {
        ExprNode n;
        n.kind = NodeKind::Constant;
        n.exact = std::move(r);
        n.value = to_double(n.exact);
        return push(std::move(n));
    }

    std::int32_t push_binary(NodeKind k, std::int32_t l, std::int32_t r) {
        ExprNode n;
        n.kind = k;
        n.lhs = l;
        n.rhs = r;
        return push(std::move(n));
    }

    std::int32_t push_unary(NodeKind k, std::int32_t c) {
        ExprNode n;
        n.kind = k;
        n.lhs = c;
        return push(std::move(n));
    }

    // expr := term (('+'|'-') term)*
    std::int32_t parse_expr() {
        std::int32_t lhs = parse_term();
        for (;;) {
            if (eat('+')) lhs = push_binary(NodeKind::Add, lhs, parse_term());
            else if (eat('-')) lhs = push_binary(NodeKind::Sub, lhs, parse_term());
            else return lhs;
        }
    }

    // term := factor (('*'|'/') factor)*
    std::int32_t parse_term() {
        std::int32_t lhs = parse_factor();
        for (;;) {
            if (eat('*')) lhs = push_binary(NodeKind::Mul, lhs, parse_factor());
            else if (eat('/')) lhs = push_binary(NodeKind::Div, lhs, parse_factor());
            else return lhs;
        }
    }

    // factor := '-' factor | atom ('^' integer)?
    // Declared precedence is pow > unary minus, so "-x^2" is -(x^2).
    std::int32_t parse_factor() {
        if (eat('-')) return push_unary(NodeKind::Neg, parse_factor());
        std::int32_t base = parse_atom();
        if (eat('^')) {
            std::size_t at = pos_;
            int e = parse_exponent(at);
            ExprNode n;
            n.kind = NodeKind::Pow;
            n.lhs = base;
            n.exponent = e;
            return push(std::move(n));
        }
        return base;
    }

    int parse_exponent(std::size_t at) {
        skip_ws();
        bool negative = false;
        if (eat('-')) negative = true;
        Rational value;
        if (peek() == '(') {
            ++pos_;
            std::int32_t sub = parse_expr();
            if (!eat(')')) throw ParseError("expected ')'", pos_);
            std::optional<Rational> folded = fold_constant(sub);
            if (!folded) throw ParseError("exponent must be a constant", at);
            value = *folded;
        } else if (std::isdigit(static_cast<unsigned char>(peek()))) {
            // digits only: '/' or '.' after the exponent belong to the
            // enclosing term ("x^2/3" is (x^2)/3)
            std::size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            if (pos_ < src_.size() && src_[pos_] == '.')
                throw ParseError("non-integer exponent; write fractional powers via sqrt()", at);
            value = rational_from_decimal(src_.substr(start, pos_ - start));
        } else {
            throw ParseError("expected integer exponent after '^'", pos_);
        }
        if (!is_integer(value))
            throw ParseError("non-integer exponent; write fractional powers via sqrt()", at);
        if (abs(numerator(value)) > kMaxExponent)
            throw ParseError("exponent magnitude above " + std::to_string(kMaxExponent), at);
        int e = static_cast<int>(numerator(value).convert_to<long>());
        return negative ? -e : e;
    }

    // atom := number | 'x' | func '(' expr ')' | '(' expr ')'
    std::int32_t parse_atom() {
        char c = peek();
        if (c == '\0') throw ParseError("unexpected end of input", pos_);
        if (c == '(') {
            ++pos_;
            std::int32_t inner = parse_expr();
            if (!eat(')')) throw ParseError("expected ')'", pos_);
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return push_const(lex_number());
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            std::string ident;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ident += src_[pos_++];
            if (ident == "x") {
                ExprNode n;
                n.kind = NodeKind::Variable;
                return push(std::move(n));
            }
            NodeKind k;
            if (ident == "exp") k = NodeKind::Exp;
            else if (ident == "log") k = NodeKind::Log;
            else if (ident == "sin") k = NodeKind::Sin;
            else if (ident == "cos") k = NodeKind::Cos;
            else if (ident == "sqrt") k = NodeKind::Sqrt;
            else throw ParseError("unknown identifier '" + ident + "'", start);
            if (!eat('(')) throw ParseError("expected '(' after '" + ident + "'", pos_);
            std::int32_t arg = parse_expr();
            if (!eat(')')) throw ParseError("expected ')'", pos_);
            return push_unary(k, arg);
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    // number := digits ['.' digits] | digits '/' digits
    // "p/q" is one rational token only when written without spaces and q is
    // a plain integer; otherwise '/' is the division operator.
    Rational lex_number() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            if (pos_ == start + 1) throw ParseError("malformed number", start);
            return rational_from_decimal(src_.substr(start, pos_ - start));
        }
        if (pos_ == start) throw ParseError("malformed number", start);
        if (pos_ < src_.size() && src_[pos_] == '/') {
            std::size_t den_start = pos_ + 1;
            std::size_t q = den_start;
            while (q < src_.size() && std::isdigit(static_cast<unsigned char>(src_[q]))) ++q;
            bool den_is_int = q > den_start && (q == src_.size() || src_[q] != '.');
            if (den_is_int) {
                const Rational num = rational_from_decimal(src_.substr(start, pos_ - start));
                const Rational den = rational_from_decimal(src_.substr(den_start, q - den_start));
                if (den == 0) throw ParseError("rational literal with zero denominator", start);
                pos_ = q;
                return num / den;
            }
        }
        return rational_from_decimal(src_.substr(start, pos_ - start));
    }

    // Exact value of a constant-only subtree rooted at `id`, if it is one.
    std::optional<Rational> fold_constant(std::int32_t id) const {
        const ExprNode& n = nodes_[id];
        switch (n.kind) {
            case NodeKind::Constant: return n.exact;
            case NodeKind::Variable: return std::nullopt;
            case NodeKind::Neg: {
                auto v = fold_constant(n.lhs);
                if (v) return -*v;
                return std::nullopt;
            }
            case NodeKind::Add:
            case NodeKind::Sub:
            case NodeKind::Mul:
            case NodeKind::Div: {
                auto l = fold_constant(n.lhs);
                auto r = fold_constant(n.rhs);
                if (!l || !r) return std::nullopt;
                switch (n.kind) {
                    case NodeKind::Add: return *l + *r;
                    case NodeKind::Sub: return *l - *r;
                    case NodeKind::Mul: return *l * *r;
                    default:
                        if (*r == 0) return std::nullopt;
                        return *l / *r;
                }
            }
            default: return std::nullopt;  // transcendental constants never fold
        }
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    std::vector<ExprNode> nodes_;
};

}  // namespace

ExpressionAst parse(const std::string& source) {
    Parser parser(source);
    ExpressionAst ast;
    ast.root_ = parser.run();
    ast.nodes_ = parser.take_nodes();
    ast.source_ = source;
    ast.exact_capable_ = true;
    for (const ExprNode& n : ast.nodes_)
        if (!polynomial_node(n)) {
            ast.exact_capable_ = false;
            break;
        }
    return ast;
}

double ExpressionAst::operator()(double t) const { return eval_jet(*this, t, 0).d[0]; }

}  // namespace certquad
