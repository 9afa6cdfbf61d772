#ifndef CERTQUAD_ORACLE_HPP
#define CERTQUAD_ORACLE_HPP

#include "certquad/expr.hpp"

#include <functional>
#include <utility>

namespace certquad {

// Reference quadrature used to validate everything else.  Depends only on
// the function model; it never calls identity/bounds/integrator code.
struct OracleConfig {
    double abs_tol = 1e-12;
    double rel_tol = 1e-11;
    int max_depth = 50;
};

// Preset with more headroom for validation harnesses that compare against
// 1e-9..1e-12 criteria.
OracleConfig tight_oracle();

struct OracleResult {
    double value = 0.0;
    double err_est = 0.0;
    long evaluations = 0;
};

enum class SingularHint {
    None,
    Left,   // sqrt-type behaviour at a: substitute t = a + u^2
    Right,  // at b: t = b - u^2
    Both,
};

// Adaptive bisection; each panel is a 15-point Gauss-Legendre value with
// an embedded 7-point estimate for the error.  Satisfies
// err_est <= max(abs_tol, rel_tol*|value|) or throws NoConvergence.
OracleResult integrate_reference(const std::function<double(double)>& f, double a, double b,
                                 const OracleConfig& cfg = {},
                                 SingularHint hint = SingularHint::None);

OracleResult integrate_reference(const ExpressionAst& f, double a, double b,
                                 const OracleConfig& cfg = {},
                                 SingularHint hint = SingularHint::None);

// Jensen step of the concave bound: lhs = mean of |f^(n)|^q over [a,b],
// rhs = |f^(n)((a+b)/2)|^q.  Verifies concavity of |f^(n)|^q on the grid
// first (unless assume) and throws HypothesisViolation when it fails.
std::pair<double, double> jensen_check(const ExpressionAst& f, double a, double b, int n,
                                       double q, const OracleConfig& cfg = {},
                                       bool assume = false);

}  // namespace certquad

#endif
