#include "certquad/poly.hpp"

#include "certquad/errors.hpp"

namespace certquad {

RationalPolynomial::RationalPolynomial(std::vector<Rational> coeffs)
    : coeffs_(std::move(coeffs)) {
    trim();
}

void RationalPolynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational RationalPolynomial::eval(const Rational& t) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
    return acc;
}

RationalPolynomial RationalPolynomial::derivative() const {
    if (coeffs_.size() <= 1) return RationalPolynomial{};
    std::vector<Rational> out(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) out[k - 1] = coeffs_[k] * static_cast<int>(k);
    return RationalPolynomial(std::move(out));
}

RationalPolynomial RationalPolynomial::antiderivative() const {
    std::vector<Rational> out(coeffs_.size() + 1, Rational(0));
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
        out[k + 1] = coeffs_[k] / static_cast<int>(k + 1);
    return RationalPolynomial(std::move(out));
}

Rational RationalPolynomial::integral(const Rational& a, const Rational& b) const {
    RationalPolynomial anti = antiderivative();
    return anti.eval(b) - anti.eval(a);
}

RationalPolynomial RationalPolynomial::operator+(const RationalPolynomial& o) const {
    std::vector<Rational> out(std::max(coeffs_.size(), o.coeffs_.size()), Rational(0));
    for (std::size_t k = 0; k < coeffs_.size(); ++k) out[k] += coeffs_[k];
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) out[k] += o.coeffs_[k];
    return RationalPolynomial(std::move(out));
}

RationalPolynomial RationalPolynomial::operator*(const RationalPolynomial& o) const {
    if (coeffs_.empty() || o.coeffs_.empty()) return RationalPolynomial{};
    std::vector<Rational> out(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * o.coeffs_[j];
    return RationalPolynomial(std::move(out));
}

RationalPolynomial RationalPolynomial::scaled(const Rational& c) const {
    std::vector<Rational> out = coeffs_;
    for (auto& v : out) v *= c;
    return RationalPolynomial(std::move(out));
}

RationalPolynomial RationalPolynomial::from_expr(const ExpressionAst& f) {
    if (!f.exact_capable())
        throw NotExactCapable("polynomial extraction requires an exact-capable tree: " +
                              f.source());
    const auto& nodes = f.nodes();
    std::vector<RationalPolynomial> buf(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const ExprNode& n = nodes[i];
        switch (n.kind) {
            case NodeKind::Constant:
                buf[i] = RationalPolynomial({n.exact});
                break;
            case NodeKind::Variable:
                buf[i] = RationalPolynomial({Rational(0), Rational(1)});
                break;
            case NodeKind::Add:
                buf[i] = buf[n.lhs] + buf[n.rhs];
                break;
            case NodeKind::Sub:
                buf[i] = buf[n.lhs] + buf[n.rhs].scaled(Rational(-1));
                break;
            case NodeKind::Neg:
                buf[i] = buf[n.lhs].scaled(Rational(-1));
                break;
            case NodeKind::Mul:
                buf[i] = buf[n.lhs] * buf[n.rhs];
                break;
            case NodeKind::Pow: {
                RationalPolynomial acc({Rational(1)});
                RationalPolynomial base = buf[n.lhs];
                int e = n.exponent;
                while (e > 0) {
                    if (e & 1) acc = acc * base;
                    e >>= 1;
                    if (e > 0) base = base * base;
                }
                buf[i] = std::move(acc);
                break;
            }
            default:
                throw NotExactCapable("polynomial extraction requires an exact-capable tree");
        }
    }
    return buf[f.root()];
}

}  // namespace certquad
