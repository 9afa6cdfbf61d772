#ifndef CERTQUAD_JET_HPP
#define CERTQUAD_JET_HPP

#include "certquad/expr.hpp"
#include "certquad/rational.hpp"

#include <vector>

namespace certquad {

// Truncated derivative sequence at a point: d[k] = f^(k)(t), k = 0..m.
// Internally the propagation runs on Taylor coefficients f^(k)/k! and is
// rescaled on output.
struct Jet {
    double center = 0.0;
    std::vector<double> d;

    int order() const { return static_cast<int>(d.size()) - 1; }
    double value() const { return d[0]; }
    double back() const { return d.back(); }
};

inline constexpr int kDefaultMaxOrder = 32;

// Derivatives of f at t up to order m, by Taylor-coefficient recurrences
// (Cauchy products for mul/div, the usual chain rules for exp/log/sin/
// cos/sqrt).  Throws DomainError outside the natural domain and
// OrderOverflow for m > max_order.
Jet eval_jet(const ExpressionAst& f, double t, int m, int max_order = kDefaultMaxOrder);

// f^(m)(t) alone.
double eval_derivative(const ExpressionAst& f, double t, int m);

// Exact rational derivatives for exact-capable (polynomial) trees.
// Throws NotExactCapable otherwise.
std::vector<Rational> eval_jet_exact(const ExpressionAst& f, const Rational& t, int m,
                                     int max_order = kDefaultMaxOrder);

}  // namespace certquad

#endif
