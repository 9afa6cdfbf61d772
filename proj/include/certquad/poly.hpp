#ifndef CERTQUAD_POLY_HPP
#define CERTQUAD_POLY_HPP

#include "certquad/expr.hpp"
#include "certquad/rational.hpp"

#include <vector>

namespace certquad {

// Dense polynomial over exact rationals.  Backs the exact reference path:
// for exact-capable trees, derivatives, antiderivatives and definite
// integrals are all computed without rounding.
class RationalPolynomial {
public:
    RationalPolynomial() = default;
    explicit RationalPolynomial(std::vector<Rational> coeffs);  // coeffs[k] * t^k

    // Extraction from a parsed tree; throws NotExactCapable for trees
    // containing div/exp/log/sin/cos/sqrt or negative exponents.
    static RationalPolynomial from_expr(const ExpressionAst& f);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero poly
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    Rational eval(const Rational& t) const;
    RationalPolynomial derivative() const;
    RationalPolynomial antiderivative() const;  // constant term 0
    Rational integral(const Rational& a, const Rational& b) const;

    RationalPolynomial operator+(const RationalPolynomial& o) const;
    RationalPolynomial operator*(const RationalPolynomial& o) const;
    RationalPolynomial scaled(const Rational& c) const;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

}  // namespace certquad

#endif
