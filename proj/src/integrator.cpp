#include "certquad/integrator.hpp"

#include "certquad/errors.hpp"
#include "certquad/identity.hpp"
#include "certquad/jet.hpp"
#include "certquad/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <queue>

namespace certquad {
namespace {

using JetPtr = std::shared_ptr<const std::vector<double>>;

struct FamilyCheck {
    ConvexityProperty property;
    double q;
    const char* label;
};

FamilyCheck family_check(BoundFamily family, double hp) {
    switch (family) {
        case BoundFamily::ConvexT21:
        case BoundFamily::MidpointC11:
        case BoundFamily::N1C12:
            return {ConvexityProperty::AbsNthConvex, 1.0, "|f^(n)| convex"};
        case BoundFamily::HolderT22:
            if (!(hp > 1.0)) throw Error("Holder exponent must exceed 1");
            return {ConvexityProperty::AbsNthConvex, hp / (hp - 1.0), "|f^(n)|^q convex"};
        case BoundFamily::ConcaveT23:
            if (!(hp > 1.0)) throw Error("Holder exponent must exceed 1");
            return {ConvexityProperty::AbsNthQConcave, hp / (hp - 1.0), "|f^(n)|^q concave"};
        case BoundFamily::DaT11:
        case BoundFamily::DaT12:
            throw Error("mean-form families do not certify integral panels");
    }
    throw Error("unreachable bound family");
}

// One working panel: endpoint jets to order n plus the midpoint jet, which a
// later split hands down to both children.
struct Node {
    double u = 0, v = 0, x = 0;
    JetPtr ju, jv, jm;
    double estimate = 0, certified = 0;
};

struct Workspace {
    const ExpressionAst& f;
    int n;
    BoundFamily family;
    double hp;
    const IntegratorOptions& opts;
    long evaluations = 0;

    JetPtr jet_at(double t) {
        ++evaluations;
        return std::make_shared<const std::vector<double>>(eval_jet(f, t, n).d);
    }

    double place_x(double u, double v) const {
        switch (opts.x_choice) {
            case XChoice::Mid: return u + (v - u) / 2;
            case XChoice::Fixed: return u + opts.x_fixed * (v - u);
            case XChoice::Optimized: return u + (v - u) / 2;  // refined in make_node
        }
        return u + (v - u) / 2;
    }

    Node make_node(double u, double v, JetPtr ju, JetPtr jv) {
        if (opts.recheck_per_panel) {
            const FamilyCheck fc = family_check(family, hp);
            ConvexityVerdict verdict =
                check_convexity(f, u, v, n, fc.property, fc.q, opts.m_grid);
            if (!verdict.ok())
                throw HypothesisViolation(std::string(fc.label) + " fails on a panel",
                                          verdict.witness);
        }
        Node node;
        node.u = u;
        node.v = v;
        node.ju = std::move(ju);
        node.jv = std::move(jv);
        node.jm = jet_at(u + (v - u) / 2);
        node.x = (family == BoundFamily::MidpointC11) ? u + (v - u) / 2 : place_x(u, v);

        const double fa = std::abs((*node.ju)[n]);
        const double fb = std::abs((*node.jv)[n]);
        const double fmid = std::abs((*node.jm)[n]);
        if (opts.x_choice == XChoice::Optimized && family != BoundFamily::MidpointC11) {
            node.x = best_x(u, v, fa, fb, fmid);
        }
        RuleParams rp{u, v, node.x, n};
        node.estimate = quad_rule_from_jets(rp, *node.ju, *node.jv);
        node.certified = bound_value(family, rp, hp, fa, fb, fmid);
        return node;
    }

    // Scan plus golden section on the closed-form bound; jets are already
    // in hand so each probe is arithmetic only.
    double best_x(double u, double v, double fa, double fb, double fmid) const {
        auto val = [&](double x) {
            return bound_value(family, RuleParams{u, v, x, n}, hp, fa, fb, fmid);
        };
        constexpr int kScan = 32;
        int best = 0;
        double best_val = val(u);
        for (int i = 1; i <= kScan; ++i) {
            const double x = u + (v - u) * i / kScan;
            const double w = val(x);
            if (w < best_val) {
                best_val = w;
                best = i;
            }
        }
        double lo = u + (v - u) * std::max(0, best - 1) / kScan;
        double hi = u + (v - u) * std::min(kScan, best + 1) / kScan;
        const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
        double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
        double fc = val(c), fd = val(d);
        while (hi - lo > 1e-10 * (v - u)) {
            if (fc < fd) {
                hi = d;
                d = c;
                fd = fc;
                c = hi - gr * (hi - lo);
                fc = val(c);
            } else {
                lo = c;
                c = d;
                fc = fd;
                d = lo + gr * (hi - lo);
                fd = val(d);
            }
        }
        const double xg = lo + (hi - lo) / 2;
        return val(xg) <= best_val ? xg : u + (v - u) * best / kScan;
    }
};

double least_squares_slope(const std::vector<ConvergenceRow>& rows,
                           double ConvergenceRow::* column) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (rows.size() < 2) return nan;
    double sx = 0, sy = 0;
    for (const ConvergenceRow& r : rows) {
        if (!(r.*column > 0)) return nan;
        sx += std::log(static_cast<double>(r.panels));
        sy += std::log(r.*column);
    }
    const double mx = sx / rows.size(), my = sy / rows.size();
    double num = 0, den = 0;
    for (const ConvergenceRow& r : rows) {
        const double dx = std::log(static_cast<double>(r.panels)) - mx;
        num += dx * (std::log(r.*column) - my);
        den += dx * dx;
    }
    return num / den;
}

ConvexityVerdict global_check(const ExpressionAst& f, double a, double b, int n,
                              BoundFamily family, double hp, bool assume, int m_grid) {
    const FamilyCheck fc = family_check(family, hp);
    if (assume) {
        ConvexityVerdict v;
        v.property = fc.property;
        v.q = fc.q;
        v.status = ConvexityStatus::AssumedByUser;
        return v;
    }
    ConvexityVerdict v = check_convexity(f, a, b, n, fc.property, fc.q, m_grid);
    if (!v.ok())
        throw HypothesisViolation(std::string(fc.label) + " fails the grid check", v.witness);
    return v;
}

}  // namespace

QuadratureResult integrate_certified(const ExpressionAst& f, double a, double b, int n,
                                     BoundFamily family, double hp, double tol,
                                     int max_panels, const IntegratorOptions& opts) {
    RuleParams{a, b, a + (b - a) / 2, n}.validate();
    if (!(tol > 0)) throw Error("tolerance must be positive");
    if (max_panels < 1) throw Error("max_panels must be at least 1");
    if (family == BoundFamily::N1C12 && n != 1) throw Error("n1-c12 certifies n = 1 only");
    if (opts.x_choice == XChoice::Fixed && !(opts.x_fixed >= 0.0 && opts.x_fixed <= 1.0))
        throw Error("fixed x position must lie in [0, 1]");

    QuadratureResult out;
    out.n = n;
    out.family = family;
    out.verdict = global_check(f, a, b, n, family, hp, opts.assume_hypotheses, opts.m_grid);

    Workspace ws{f, n, family, hp, opts};
    std::vector<Node> arena;
    arena.push_back(ws.make_node(a, b, ws.jet_at(a), ws.jet_at(b)));

    struct Ent {
        double certified;
        double u;
        std::size_t idx;
    };
    struct Less {
        bool operator()(const Ent& l, const Ent& r) const {
            if (l.certified != r.certified) return l.certified < r.certified;
            return l.u > r.u;  // worst first; ties resolved left to right
        }
    };
    std::priority_queue<Ent, std::vector<Ent>, Less> heap;
    heap.push({arena[0].certified, arena[0].u, 0});

    double total = arena[0].certified;
    int alive = 1;
    std::vector<char> dead(1, 0);

    while (total > tol && alive < max_panels) {
        const Ent worst = heap.top();
        heap.pop();
        Node& parent = arena[worst.idx];
        dead[worst.idx] = 1;

        const double m = parent.u + (parent.v - parent.u) / 2;
        Node left = ws.make_node(parent.u, m, parent.ju, parent.jm);
        Node right = ws.make_node(m, parent.v, parent.jm, parent.jv);
        total += left.certified + right.certified - parent.certified;

        arena.push_back(std::move(left));
        dead.push_back(0);
        heap.push({arena.back().certified, arena.back().u, arena.size() - 1});
        arena.push_back(std::move(right));
        dead.push_back(0);
        heap.push({arena.back().certified, arena.back().u, arena.size() - 1});
        ++alive;
    }

    for (std::size_t i = 0; i < arena.size(); ++i) {
        if (dead[i]) continue;
        out.panels.push_back(
            {arena[i].u, arena[i].v, arena[i].x, arena[i].estimate, arena[i].certified});
    }
    std::sort(out.panels.begin(), out.panels.end(),
              [](const Panel& l, const Panel& r) { return l.u < r.u; });

    out.estimate = 0;
    out.certified = 0;
    for (const Panel& p : out.panels) {
        out.estimate += p.estimate;
        out.certified += p.certified;
    }
    out.evaluations = ws.evaluations;
    out.tolerance_reached = out.certified <= tol;
    return out;
}

ConvergenceScan convergence_scan(const ExpressionAst& f, double a, double b, int n,
                                 BoundFamily family, const std::vector<int>& panel_counts,
                                 double hp, const IntegratorOptions& opts,
                                 const OracleConfig& cfg) {
    RuleParams{a, b, a + (b - a) / 2, n}.validate();
    if (family == BoundFamily::N1C12 && n != 1) throw Error("n1-c12 certifies n = 1 only");
    global_check(f, a, b, n, family, hp, opts.assume_hypotheses, opts.m_grid);

    const double exact = integrate_reference(f, a, b, cfg).value;

    ConvergenceScan out;
    Workspace ws{f, n, family, hp, opts};
    for (int m : panel_counts) {
        if (m < 1) throw Error("panel counts must be positive");
        std::vector<JetPtr> grid(static_cast<std::size_t>(m) + 1);
        for (int i = 0; i <= m; ++i)
            grid[i] = ws.jet_at(i == m ? b : a + (b - a) * i / m);

        double est = 0, cert = 0;
        for (int i = 0; i < m; ++i) {
            const double u = (i == 0) ? a : a + (b - a) * i / m;
            const double v = (i + 1 == m) ? b : a + (b - a) * (i + 1) / m;
            Node node = ws.make_node(u, v, grid[i], grid[i + 1]);
            est += node.estimate;
            cert += node.certified;
        }
        out.rows.push_back({m, cert, cert / m, std::abs(est - exact)});
    }

    out.slope_certified = least_squares_slope(out.rows, &ConvergenceRow::certified);
    out.slope_certified_mean = least_squares_slope(out.rows, &ConvergenceRow::certified_mean);
    out.slope_true_error = least_squares_slope(out.rows, &ConvergenceRow::true_error);
    return out;
}

}  // namespace certquad
