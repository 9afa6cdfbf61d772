#include "certquad/convexity.hpp"

#include "certquad/errors.hpp"
#include "certquad/jet.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace certquad {
namespace {

// Samples g on the grid.  Endpoint evaluations that raise a DomainError
// (sqrt-type vertical tangents) are replaced by linear extrapolation from
// the two nearest interior values: exact for affine g and neutral in the
// stride-1 triple, where a one-sided substitute value would not be.
// Interior failures propagate.
std::vector<double> sample_grid(const std::function<double(double)>& g, double a, double b,
                                int m_grid) {
    const double h = (b - a) / m_grid;
    std::vector<double> vals(static_cast<std::size_t>(m_grid) + 1);
    for (int i = 1; i < m_grid; ++i) vals[i] = g(a + h * i);
    try {
        vals[0] = g(a);
    } catch (const DomainError&) {
        if (m_grid < 4) throw;
        vals[0] = 2.0 * vals[1] - vals[2];
    }
    try {
        vals[m_grid] = g(b);
    } catch (const DomainError&) {
        if (m_grid < 4) throw;
        vals[m_grid] = 2.0 * vals[m_grid - 1] - vals[m_grid - 2];
    }
    return vals;
}

ConvexityVerdict grid_verdict(const std::function<double(double)>& g, double a, double b,
                              bool concave, int m_grid, double tau_cvx) {
    if (m_grid < 2) throw Error("convexity grid needs at least three points");
    if (!(b > a)) throw Error("convexity grid needs b > a");

    std::vector<double> vals = sample_grid(g, a, b, m_grid);

    double gmax = 0.0;
    for (double v : vals) gmax = std::max(gmax, std::abs(v));
    const double tau = (tau_cvx < 0.0) ? 1e-10 * (1.0 + gmax) : tau_cvx;

    ConvexityVerdict verdict;
    verdict.m_grid = m_grid;
    verdict.tau = tau;
    verdict.status = ConvexityStatus::VerifiedOnGrid;

    const double h = (b - a) / m_grid;
    const double sign = concave ? -1.0 : 1.0;
    for (int s = 1; 2 * s <= m_grid; s *= 2) {
        for (int i = 0; i + 2 * s <= m_grid; ++i) {
            // Midpoint convexity on the triple (i, i+s, i+2s).
            const double gap = vals[i] + vals[i + 2 * s] - 2.0 * vals[i + s];
            if (sign * gap < -tau) {
                verdict.status = ConvexityStatus::Violated;
                verdict.witness = a + h * (i + s);
                return verdict;
            }
        }
    }
    return verdict;
}

}  // namespace

ConvexityVerdict check_convexity(const ExpressionAst& f, double a, double b, int n,
                                 ConvexityProperty mode, double q, int m_grid,
                                 double tau_cvx) {
    const bool concave = (mode == ConvexityProperty::AbsNthQConcave);
    auto g = [&](double t) {
        const double d = eval_derivative(f, t, n);
        const double ad = std::abs(d);
        return (q != 1.0) ? std::pow(ad, q) : ad;
    };
    ConvexityVerdict verdict = grid_verdict(g, a, b, concave, m_grid, tau_cvx);
    verdict.property = mode;
    verdict.q = q;
    return verdict;
}

ConvexityVerdict check_convexity_fn(const std::function<double(double)>& g, double a,
                                    double b, bool concave, int m_grid, double tau_cvx) {
    ConvexityVerdict verdict = grid_verdict(g, a, b, concave, m_grid, tau_cvx);
    verdict.property = concave ? ConvexityProperty::AbsNthQConcave
                               : ConvexityProperty::AbsNthConvex;
    verdict.q = 1.0;
    return verdict;
}

}  // namespace certquad
