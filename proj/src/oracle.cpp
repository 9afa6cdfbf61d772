#include "certquad/oracle.hpp"

#include "certquad/convexity.hpp"
#include "certquad/errors.hpp"
#include "certquad/jet.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

namespace certquad {
namespace {

struct GlRule {
    std::vector<double> x, w;  // nodes and weights on [-1, 1]
};

// Nodes are the roots of the Legendre polynomial, found by Newton iteration
// on the three-term recurrence; weights follow from the derivative.  Built
// once per order, so nothing is hand-typed.
GlRule make_gl(int n) {
    GlRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
        double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pn = 0.0, pn1 = 0.0;
        for (int iter = 0; iter < 64; ++iter) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pn = p1;
            pn1 = p0;
            const double dp = n * (t * pn - pn1) / (t * t - 1.0);
            const double dt = pn / dp;
            t -= dt;
            if (std::abs(dt) <= 1e-15) break;
        }
        {
            // One clean pass at the converged node for the weight.
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pn = p1;
            pn1 = p0;
        }
        const double dp = n * (t * pn - pn1) / (t * t - 1.0);
        r.x[i] = t;
        r.w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
    return r;
}

const GlRule& gl7() {
    static const GlRule r = make_gl(7);
    return r;
}

const GlRule& gl15() {
    static const GlRule r = make_gl(15);
    return r;
}

struct PanelEval {
    double value = 0.0;   // 15-point value
    double err = 0.0;     // |15-point - 7-point|
    double resabs = 0.0;  // 15-point quadrature of |f|, for the noise floor
};

template <typename F>
PanelEval eval_panel(const F& f, double u, double v) {
    const double c = 0.5 * (u + v), s = 0.5 * (v - u);
    PanelEval out;
    double hi = 0.0, habs = 0.0, lo = 0.0;
    const GlRule& r15 = gl15();
    for (int i = 0; i < 15; ++i) {
        const double y = f(c + s * r15.x[i]);
        hi += r15.w[i] * y;
        habs += r15.w[i] * std::abs(y);
    }
    const GlRule& r7 = gl7();
    for (int i = 0; i < 7; ++i) lo += r7.w[i] * f(c + s * r7.x[i]);
    out.value = s * hi;
    out.resabs = s * habs;
    out.err = std::abs(s * (hi - lo));
    return out;
}

std::string fmt_sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

// Below this depth a panel error estimate that fails to improve on its
// parent's is treated as evaluation roundoff rather than truncation.
constexpr int kStallDepth = 12;

struct Driver {
    const std::function<double(double)>& f;
    double tol_per_len;  // admissible error per unit length
    int max_depth;
    double value = 0.0;
    double err = 0.0;
    double err_sq = 0.0;  // squared estimates of roundoff-dominated panels
    double resabs = 0.0;
    long evals = 0;

    void run(double u, double v, int depth, double parent_err) {
        const PanelEval p = eval_panel(f, u, v);
        evals += 22;
        const double local = tol_per_len * (v - u);
        const double noise = 4.0 * std::numeric_limits<double>::epsilon() * p.resabs;
        // A narrow panel whose estimate improved less than 3x on its parent's
        // is dominated by evaluation roundoff; splitting cannot help, so keep
        // it.  Roundoff deviations across panels are independent, hence their
        // estimates accumulate in quadrature rather than linearly.  A genuine
        // kink still refines (its estimate drops 4x per split), and the final
        // tolerance check below judges the accumulated total.
        const bool stalled = depth >= kStallDepth && p.err >= 0.3 * parent_err;
        if (p.err <= std::max(local, noise) || stalled) {
            value += p.value;
            if (stalled)
                err_sq += p.err * p.err;
            else
                err += p.err;
            resabs += p.resabs;
            return;
        }
        if (depth >= max_depth)
            throw NoConvergence("reference quadrature stalled on [" + std::to_string(u) +
                                ", " + std::to_string(v) + "] with error estimate " +
                                fmt_sci(p.err));
        const double m = 0.5 * (u + v);
        run(u, m, depth + 1, p.err);
        run(m, v, depth + 1, p.err);
    }
};

OracleResult integrate_plain(const std::function<double(double)>& f, double a, double b,
                             const OracleConfig& cfg) {
    OracleResult out;
    if (a == b) return out;
    if (a > b) throw Error("reference quadrature needs a <= b");

    const PanelEval rough = eval_panel(f, a, b);
    const double scale = std::max(std::abs(rough.value), rough.resabs);
    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * scale);

    Driver d{f, tol / (b - a), cfg.max_depth};
    d.evals = 22;
    d.run(a, b, 0, std::numeric_limits<double>::infinity());
    const double total_err = d.err + std::sqrt(d.err_sq);
    const double allowed = std::max(tol, cfg.rel_tol * std::abs(d.value)) +
                           64.0 * std::numeric_limits<double>::epsilon() * d.resabs;
    if (total_err > allowed)
        throw NoConvergence("reference quadrature error estimate " + fmt_sci(total_err) +
                            " exceeds the requested tolerance " + fmt_sci(allowed));
    out.value = d.value;
    out.err_est = total_err;
    out.evaluations = d.evals;
    return out;
}

}  // namespace

OracleConfig tight_oracle() {
    OracleConfig cfg;
    cfg.abs_tol = 1e-13;
    cfg.rel_tol = 1e-13;
    cfg.max_depth = 60;
    return cfg;
}

OracleResult integrate_reference(const std::function<double(double)>& f, double a, double b,
                                 const OracleConfig& cfg, SingularHint hint) {
    switch (hint) {
        case SingularHint::None:
            return integrate_plain(f, a, b, cfg);
        case SingularHint::Left: {
            // t = a + u^2 straightens square-root behaviour at a.
            auto g = [&](double u) { return 2.0 * u * f(a + u * u); };
            return integrate_plain(g, 0.0, std::sqrt(b - a), cfg);
        }
        case SingularHint::Right: {
            auto g = [&](double u) { return 2.0 * u * f(b - u * u); };
            return integrate_plain(g, 0.0, std::sqrt(b - a), cfg);
        }
        case SingularHint::Both: {
            const double m = 0.5 * (a + b);
            OracleConfig half = cfg;
            half.abs_tol = 0.5 * cfg.abs_tol;
            OracleResult l = integrate_reference(f, a, m, half, SingularHint::Left);
            OracleResult r = integrate_reference(f, m, b, half, SingularHint::Right);
            return {l.value + r.value, l.err_est + r.err_est, l.evaluations + r.evaluations};
        }
    }
    throw Error("unreachable singular hint");
}

OracleResult integrate_reference(const ExpressionAst& f, double a, double b,
                                 const OracleConfig& cfg, SingularHint hint) {
    return integrate_reference([&](double t) { return f(t); }, a, b, cfg, hint);
}

std::pair<double, double> jensen_check(const ExpressionAst& f, double a, double b, int n,
                                       double q, const OracleConfig& cfg, bool assume) {
    if (!(q > 1.0)) throw Error("jensen check needs q > 1");
    if (!assume) {
        ConvexityVerdict v =
            check_convexity(f, a, b, n, ConvexityProperty::AbsNthQConcave, q);
        if (!v.ok())
            throw HypothesisViolation("|f^(n)|^q is not concave on the grid", v.witness);
    }
    auto g = [&](double t) { return std::pow(std::abs(eval_derivative(f, t, n)), q); };
    const OracleResult mean = integrate_reference(g, a, b, cfg);
    const double lhs = mean.value / (b - a);
    const double rhs = g(0.5 * (a + b));
    return {lhs, rhs};
}

}  // namespace certquad
