#ifndef CERTQUAD_INTEGRATOR_HPP
#define CERTQUAD_INTEGRATOR_HPP

#include "certquad/bounds.hpp"
#include "certquad/expr.hpp"

#include <vector>

namespace certquad {

enum class XChoice {
    Mid,        // panel midpoint (default)
    Optimized,  // optimize_x per panel, ~33x the jet cost
    Fixed,      // fixed relative position, mapped into each panel
};

struct Panel {
    double u = 0, v = 0;     // subinterval
    double x = 0;            // rule point inside [u,v]
    double estimate = 0;     // Q_n on the panel
    double certified = 0;    // bound value on the panel
};

struct QuadratureResult {
    double estimate = 0;
    double certified = 0;
    std::vector<Panel> panels;  // sorted by u; partition of [a,b]
    int n = 1;
    BoundFamily family = BoundFamily::ConvexT21;
    long evaluations = 0;        // endpoint jet evaluations
    bool tolerance_reached = false;
    ConvexityVerdict verdict;    // global hypothesis check
};

struct IntegratorOptions {
    XChoice x_choice = XChoice::Mid;
    double x_fixed = 0.5;        // relative position in (0,1) for XChoice::Fixed
    bool assume_hypotheses = false;
    bool recheck_per_panel = false;  // paranoid mode; convexity restricts to subintervals
    int m_grid = 129;
};

// Greedy certified integration: maintain panels keyed by certified bound,
// bisect the worst at its exact midpoint until the summed bound meets tol
// or max_panels is reached.  tolerance_not_reached is reported via the
// flag, not an exception, so the estimate stays usable.
QuadratureResult integrate_certified(const ExpressionAst& f, double a, double b, int n,
                                     BoundFamily family, double hp, double tol,
                                     int max_panels, const IntegratorOptions& opts = {});

struct ConvergenceRow {
    int panels = 0;
    double certified = 0;       // summed bound over the uniform partition
    double certified_mean = 0;  // certified / panels: the per-panel rate
    double true_error = 0;      // |estimate - oracle|
};

struct ConvergenceScan {
    std::vector<ConvergenceRow> rows;
    // Least-squares log-log slopes vs panel count; NaN when a column hits 0.
    double slope_certified = 0;       // summed bound: -n for smooth f
    double slope_certified_mean = 0;  // per-panel bound: -(n+1)
    double slope_true_error = 0;
};

// Uniform m-panel composite rules for each requested count.
ConvergenceScan convergence_scan(const ExpressionAst& f, double a, double b, int n,
                                 BoundFamily family, const std::vector<int>& panel_counts,
                                 double hp = 2.0, const IntegratorOptions& opts = {},
                                 const OracleConfig& cfg = {});

}  // namespace certquad

#endif
