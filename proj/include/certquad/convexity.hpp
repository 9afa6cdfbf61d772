#ifndef CERTQUAD_CONVEXITY_HPP
#define CERTQUAD_CONVEXITY_HPP

#include "certquad/expr.hpp"

#include <functional>

namespace certquad {

enum class ConvexityProperty {
    AbsNthConvex,    // |f^(n)|^q convex on [a,b] (q = 1 gives plain convexity)
    AbsNthQConcave,  // |f^(n)|^q concave on [a,b]
};

enum class ConvexityStatus {
    VerifiedOnGrid,
    Violated,
    AssumedByUser,
};

struct ConvexityVerdict {
    ConvexityProperty property = ConvexityProperty::AbsNthConvex;
    double q = 1.0;
    ConvexityStatus status = ConvexityStatus::AssumedByUser;
    double witness = 0.0;  // only meaningful when Violated
    int m_grid = 0;
    double tau = 0.0;      // effective tolerance used

    bool ok() const { return status != ConvexityStatus::Violated; }
};

// Grid midpoint-convexity test for g(t) = |f^(n)(t)| (or |f^(n)(t)|^q in
// concave mode) on m_grid+1 equispaced points.  Triples (i, i+s, i+2s) are
// checked for every power-of-two stride s.  tau_cvx < 0 selects the
// default 1e-10 * (1 + max|g|).  Endpoint grid values that raise a
// DomainError (sqrt-type vertical tangents) are replaced by linear
// extrapolation from the nearest interior values.
ConvexityVerdict check_convexity(const ExpressionAst& f, double a, double b, int n,
                                 ConvexityProperty mode, double q = 1.0,
                                 int m_grid = 129, double tau_cvx = -1.0);

// Same grid test for an arbitrary scalar function (used for the plain
// Hermite-Hadamard convexity hypothesis on f itself).
ConvexityVerdict check_convexity_fn(const std::function<double(double)>& g, double a,
                                    double b, bool concave = false, int m_grid = 129,
                                    double tau_cvx = -1.0);

}  // namespace certquad

#endif
