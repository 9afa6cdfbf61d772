#ifndef CERTQUAD_BOUNDS_HPP
#define CERTQUAD_BOUNDS_HPP

#include "certquad/convexity.hpp"
#include "certquad/expr.hpp"
#include "certquad/identity.hpp"

#include <string>

namespace certquad {

enum class BoundFamily {
    ConvexT21,    // |f^(n)| convex, bound from the kernel moments
    HolderT22,    // |f^(n)|^q convex, Holder split of the kernel
    ConcaveT23,   // |f^(n)|^q concave, Jensen step
    MidpointC11,  // ConvexT21 at x = (a+b)/2, closed form
    N1C12,        // ConvexT21 at n = 1, closed form
    DaT11,        // trapezoid baseline, |f'| convex (mean form)
    DaT12,        // trapezoid baseline, |f'|^q convex (mean form)
};

const char* family_name(BoundFamily f);
BoundFamily family_from_name(const std::string& name);

// True for DaT11/DaT12, whose bound applies to the mean-normalised LHS
// |[f(a)+f(b)]/2 - (1/(b-a)) int f| instead of the integral form.
bool is_mean_form(BoundFamily f);

struct BoundReport {
    BoundFamily family = BoundFamily::ConvexT21;
    RuleParams params;
    double p = 0.0;     // Holder exponent (Holder/concave/DaT12 families)
    double q = 0.0;     // conjugate, 1/p + 1/q = 1
    double fa = 0.0;    // |f^(n)(a)|
    double fb = 0.0;    // |f^(n)(b)|
    double fmid = 0.0;  // |f^(n)((a+b)/2)|, concave family only
    double value = 0.0;
    ConvexityVerdict verdict;
};

// Hypothesis handling shared by the bound constructors.
struct BoundOptions {
    bool assume_hypotheses = false;
    int m_grid = 129;
    double tau_cvx = -1.0;  // <0: auto tolerance
};

// Pure value-level formulas (no hypothesis check, no jet evaluation).
// bound_value dispatches on family from precomputed derivative magnitudes;
// fmid feeds the concave family, hp the Holder-type ones.
double bound_value(BoundFamily family, const RuleParams& p, double hp, double fa, double fb,
                   double fmid);
double bound_value_convex(const RuleParams& p, double fa, double fb);
double bound_value_midpoint(double a, double b, int n, double fa, double fb);
double bound_value_n1(double a, double b, double x, double fa, double fb);
double bound_value_holder(const RuleParams& p, double hp, double fa, double fb);
double bound_value_concave(const RuleParams& p, double hp, double fmid);
double bound_value_da_t11(double a, double b, double fa, double fb);
double bound_value_da_t12(double a, double b, double hp, double fa, double fb);

// Full constructors: evaluate endpoint/midpoint jets, check the family's
// hypothesis on the grid (unless opts.assume_hypotheses), throw
// HypothesisViolation on failure.
BoundReport bound_convex(const ExpressionAst& f, const RuleParams& p, const BoundOptions& opts = {});
BoundReport bound_midpoint(const ExpressionAst& f, double a, double b, int n, const BoundOptions& opts = {});
BoundReport bound_n1(const ExpressionAst& f, double a, double b, double x, const BoundOptions& opts = {});
BoundReport bound_holder(const ExpressionAst& f, const RuleParams& p, double hp, const BoundOptions& opts = {});
BoundReport bound_concave(const ExpressionAst& f, const RuleParams& p, double hp, const BoundOptions& opts = {});
BoundReport bound_da_t11(const ExpressionAst& f, double a, double b, const BoundOptions& opts = {});
BoundReport bound_da_t12(const ExpressionAst& f, double a, double b, double hp, const BoundOptions& opts = {});

// Dispatch on family.  hp feeds the Holder-type families; p.x is ignored by
// MidpointC11 (pinned to the midpoint) and p.n by the n = 1 families.
BoundReport bound_report(const ExpressionAst& f, BoundFamily family, const RuleParams& p,
                         double hp = 2.0, const BoundOptions& opts = {});

// Hermite-Hadamard sandwich for convex f:
//   f((a+b)/2) <= (1/(b-a)) int f <= (f(a)+f(b))/2.
struct HhSandwich {
    double lower = 0, mid = 0, upper = 0;
};
HhSandwich hh_sandwich(const ExpressionAst& f, double a, double b,
                       const BoundOptions& opts = {}, const OracleConfig& cfg = {});

// Minimise the chosen family's bound over x in [a,b]: 33-point scan
// followed by golden-section refinement to 1e-10*(b-a).
struct OptimizedX {
    double x = 0.0;
    double value = 0.0;
};
OptimizedX optimize_x(const ExpressionAst& f, double a, double b, int n, BoundFamily family,
                      double hp = 2.0, const BoundOptions& opts = {});

}  // namespace certquad

#endif
