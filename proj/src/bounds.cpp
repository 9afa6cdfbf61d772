#include "certquad/bounds.hpp"

#include "certquad/errors.hpp"
#include "certquad/jet.hpp"
#include "certquad/oracle.hpp"

#include <cmath>
#include <functional>

namespace certquad {
namespace {

// Shared Holder kernel ((b-a)^{1/q}/n!) * [((x-a)^{np+1}+(b-x)^{np+1})/(np+1)]^{1/p}.
double holder_kernel(const RuleParams& p, double hp) {
    if (!(hp > 1.0)) throw Error("Holder exponent must exceed 1");
    const double e = p.n * hp + 1.0;
    const double q = hp / (hp - 1.0);
    const double kern = (std::pow(p.x - p.a, e) + std::pow(p.b - p.x, e)) / e;
    return std::pow(p.b - p.a, 1.0 / q) / factorial(p.n) * std::pow(kern, 1.0 / hp);
}

double power_mean_q(double fa, double fb, double q) {
    return std::pow((std::pow(fa, q) + std::pow(fb, q)) / 2.0, 1.0 / q);
}

ConvexityVerdict check_or_assume(const ExpressionAst& f, double a, double b, int n,
                                 ConvexityProperty mode, double q, const BoundOptions& opts,
                                 const char* hypothesis) {
    if (opts.assume_hypotheses) {
        ConvexityVerdict v;
        v.property = mode;
        v.q = q;
        v.status = ConvexityStatus::AssumedByUser;
        return v;
    }
    ConvexityVerdict v = check_convexity(f, a, b, n, mode, q, opts.m_grid, opts.tau_cvx);
    if (!v.ok()) throw HypothesisViolation(std::string(hypothesis) + " fails the grid check",
                                           v.witness);
    return v;
}

}  // namespace

const char* family_name(BoundFamily f) {
    switch (f) {
        case BoundFamily::ConvexT21: return "convex-t21";
        case BoundFamily::HolderT22: return "holder-t22";
        case BoundFamily::ConcaveT23: return "concave-t23";
        case BoundFamily::MidpointC11: return "midpoint-c11";
        case BoundFamily::N1C12: return "n1-c12";
        case BoundFamily::DaT11: return "da-t11";
        case BoundFamily::DaT12: return "da-t12";
    }
    throw Error("unreachable bound family");
}

BoundFamily family_from_name(const std::string& name) {
    for (BoundFamily f : {BoundFamily::ConvexT21, BoundFamily::HolderT22,
                          BoundFamily::ConcaveT23, BoundFamily::MidpointC11,
                          BoundFamily::N1C12, BoundFamily::DaT11, BoundFamily::DaT12})
        if (name == family_name(f)) return f;
    throw Error("unknown bound family: " + name);
}

bool is_mean_form(BoundFamily f) {
    return f == BoundFamily::DaT11 || f == BoundFamily::DaT12;
}

double bound_value(BoundFamily family, const RuleParams& p, double hp, double fa, double fb,
                   double fmid) {
    switch (family) {
        case BoundFamily::ConvexT21: return bound_value_convex(p, fa, fb);
        case BoundFamily::HolderT22: return bound_value_holder(p, hp, fa, fb);
        case BoundFamily::ConcaveT23: return bound_value_concave(p, hp, fmid);
        case BoundFamily::MidpointC11: return bound_value_midpoint(p.a, p.b, p.n, fa, fb);
        case BoundFamily::N1C12: return bound_value_n1(p.a, p.b, p.x, fa, fb);
        case BoundFamily::DaT11: return bound_value_da_t11(p.a, p.b, fa, fb);
        case BoundFamily::DaT12: return bound_value_da_t12(p.a, p.b, hp, fa, fb);
    }
    throw Error("unreachable bound family");
}

double bound_value_convex(const RuleParams& p, double fa, double fb) {
    const MomentSet m = kernel_moments(p);
    return (fa * (m.m1 + m.m4) + fb * (m.m2 + m.m3)) / (factorial(p.n) * (p.b - p.a));
}

double bound_value_midpoint(double a, double b, int n, double fa, double fb) {
    return pow_int(b - a, n + 1) / (pow_int(2.0, n + 1) * factorial(n + 1)) * (fa + fb);
}

double bound_value_n1(double a, double b, double x, double fa, double fb) {
    const double xa = x - a, bx = b - x;
    const double ca = bx * bx * bx + xa * xa * (3.0 * bx + 2.0 * xa);
    const double cb = xa * xa * xa + bx * bx * (3.0 * xa + 2.0 * bx);
    return (fa * ca + fb * cb) / (6.0 * (b - a));
}

double bound_value_holder(const RuleParams& p, double hp, double fa, double fb) {
    return holder_kernel(p, hp) * power_mean_q(fa, fb, hp / (hp - 1.0));
}

double bound_value_concave(const RuleParams& p, double hp, double fmid) {
    return holder_kernel(p, hp) * fmid;
}

double bound_value_da_t11(double a, double b, double fa, double fb) {
    return (b - a) * (fa + fb) / 8.0;
}

double bound_value_da_t12(double a, double b, double hp, double fa, double fb) {
    if (!(hp > 1.0)) throw Error("Holder exponent must exceed 1");
    const double q = hp / (hp - 1.0);
    return (b - a) / (2.0 * std::pow(hp + 1.0, 1.0 / hp)) * power_mean_q(fa, fb, q);
}

BoundReport bound_convex(const ExpressionAst& f, const RuleParams& p,
                         const BoundOptions& opts) {
    p.validate();
    BoundReport r;
    r.family = BoundFamily::ConvexT21;
    r.params = p;
    r.verdict = check_or_assume(f, p.a, p.b, p.n, ConvexityProperty::AbsNthConvex, 1.0, opts,
                                "|f^(n)| convex");
    r.fa = std::abs(eval_derivative(f, p.a, p.n));
    r.fb = std::abs(eval_derivative(f, p.b, p.n));
    r.value = bound_value_convex(p, r.fa, r.fb);
    return r;
}

BoundReport bound_midpoint(const ExpressionAst& f, double a, double b, int n,
                           const BoundOptions& opts) {
    RuleParams p{a, b, a + (b - a) / 2, n};
    p.validate();
    BoundReport r;
    r.family = BoundFamily::MidpointC11;
    r.params = p;
    r.verdict = check_or_assume(f, a, b, n, ConvexityProperty::AbsNthConvex, 1.0, opts,
                                "|f^(n)| convex");
    r.fa = std::abs(eval_derivative(f, a, n));
    r.fb = std::abs(eval_derivative(f, b, n));
    r.value = bound_value_midpoint(a, b, n, r.fa, r.fb);
    return r;
}

BoundReport bound_n1(const ExpressionAst& f, double a, double b, double x,
                     const BoundOptions& opts) {
    RuleParams p{a, b, x, 1};
    p.validate();
    BoundReport r;
    r.family = BoundFamily::N1C12;
    r.params = p;
    r.verdict = check_or_assume(f, a, b, 1, ConvexityProperty::AbsNthConvex, 1.0, opts,
                                "|f'| convex");
    r.fa = std::abs(eval_derivative(f, a, 1));
    r.fb = std::abs(eval_derivative(f, b, 1));
    r.value = bound_value_n1(a, b, x, r.fa, r.fb);
    return r;
}

BoundReport bound_holder(const ExpressionAst& f, const RuleParams& p, double hp,
                         const BoundOptions& opts) {
    p.validate();
    if (!(hp > 1.0)) throw Error("Holder exponent must exceed 1");
    BoundReport r;
    r.family = BoundFamily::HolderT22;
    r.params = p;
    r.p = hp;
    r.q = hp / (hp - 1.0);
    r.verdict = check_or_assume(f, p.a, p.b, p.n, ConvexityProperty::AbsNthConvex, r.q, opts,
                                "|f^(n)|^q convex");
    r.fa = std::abs(eval_derivative(f, p.a, p.n));
    r.fb = std::abs(eval_derivative(f, p.b, p.n));
    r.value = bound_value_holder(p, hp, r.fa, r.fb);
    return r;
}

BoundReport bound_concave(const ExpressionAst& f, const RuleParams& p, double hp,
                          const BoundOptions& opts) {
    p.validate();
    if (!(hp > 1.0)) throw Error("Holder exponent must exceed 1");
    BoundReport r;
    r.family = BoundFamily::ConcaveT23;
    r.params = p;
    r.p = hp;
    r.q = hp / (hp - 1.0);
    r.verdict = check_or_assume(f, p.a, p.b, p.n, ConvexityProperty::AbsNthQConcave, r.q,
                                opts, "|f^(n)|^q concave");
    r.fmid = std::abs(eval_derivative(f, p.mid(), p.n));
    r.value = bound_value_concave(p, hp, r.fmid);
    return r;
}

BoundReport bound_da_t11(const ExpressionAst& f, double a, double b,
                         const BoundOptions& opts) {
    RuleParams p{a, b, a + (b - a) / 2, 1};
    p.validate();
    BoundReport r;
    r.family = BoundFamily::DaT11;
    r.params = p;
    r.verdict = check_or_assume(f, a, b, 1, ConvexityProperty::AbsNthConvex, 1.0, opts,
                                "|f'| convex");
    r.fa = std::abs(eval_derivative(f, a, 1));
    r.fb = std::abs(eval_derivative(f, b, 1));
    r.value = bound_value_da_t11(a, b, r.fa, r.fb);
    return r;
}

BoundReport bound_da_t12(const ExpressionAst& f, double a, double b, double hp,
                         const BoundOptions& opts) {
    RuleParams p{a, b, a + (b - a) / 2, 1};
    p.validate();
    if (!(hp > 1.0)) throw Error("Holder exponent must exceed 1");
    BoundReport r;
    r.family = BoundFamily::DaT12;
    r.params = p;
    r.p = hp;
    r.q = hp / (hp - 1.0);
    r.verdict = check_or_assume(f, a, b, 1, ConvexityProperty::AbsNthConvex, r.q, opts,
                                "|f'|^q convex");
    r.fa = std::abs(eval_derivative(f, a, 1));
    r.fb = std::abs(eval_derivative(f, b, 1));
    r.value = bound_value_da_t12(a, b, hp, r.fa, r.fb);
    return r;
}

BoundReport bound_report(const ExpressionAst& f, BoundFamily family, const RuleParams& p,
                         double hp, const BoundOptions& opts) {
    switch (family) {
        case BoundFamily::ConvexT21: return bound_convex(f, p, opts);
        case BoundFamily::HolderT22: return bound_holder(f, p, hp, opts);
        case BoundFamily::ConcaveT23: return bound_concave(f, p, hp, opts);
        case BoundFamily::MidpointC11: return bound_midpoint(f, p.a, p.b, p.n, opts);
        case BoundFamily::N1C12: return bound_n1(f, p.a, p.b, p.x, opts);
        case BoundFamily::DaT11: return bound_da_t11(f, p.a, p.b, opts);
        case BoundFamily::DaT12: return bound_da_t12(f, p.a, p.b, hp, opts);
    }
    throw Error("unreachable bound family");
}

HhSandwich hh_sandwich(const ExpressionAst& f, double a, double b, const BoundOptions& opts,
                       const OracleConfig& cfg) {
    if (!(a < b)) throw Error("interval needs a < b");
    if (!opts.assume_hypotheses) {
        ConvexityVerdict v = check_convexity_fn([&](double t) { return f(t); }, a, b,
                                                /*concave=*/false, opts.m_grid, opts.tau_cvx);
        if (!v.ok()) throw HypothesisViolation("f fails the convexity grid check", v.witness);
    }
    HhSandwich s;
    s.lower = f(a + (b - a) / 2);
    s.mid = integrate_reference(f, a, b, cfg).value / (b - a);
    s.upper = (f(a) + f(b)) / 2;
    return s;
}

OptimizedX optimize_x(const ExpressionAst& f, double a, double b, int n, BoundFamily family,
                      double hp, const BoundOptions& opts) {
    RuleParams mid{a, b, a + (b - a) / 2, n};
    const BoundReport at_mid = bound_report(f, family, mid, hp, opts);

    // Endpoint and midpoint derivative magnitudes do not depend on x, so the
    // scan reuses the report's data instead of re-evaluating jets.
    std::function<double(double)> val;
    switch (family) {
        case BoundFamily::ConvexT21:
            val = [=](double x) { return bound_value_convex({a, b, x, n}, at_mid.fa, at_mid.fb); };
            break;
        case BoundFamily::HolderT22:
            val = [=](double x) { return bound_value_holder({a, b, x, n}, hp, at_mid.fa, at_mid.fb); };
            break;
        case BoundFamily::ConcaveT23:
            val = [=](double x) { return bound_value_concave({a, b, x, n}, hp, at_mid.fmid); };
            break;
        case BoundFamily::N1C12:
            val = [=](double x) { return bound_value_n1(a, b, x, at_mid.fa, at_mid.fb); };
            break;
        case BoundFamily::MidpointC11:
        case BoundFamily::DaT11:
        case BoundFamily::DaT12:
            // No x dependence.
            return {mid.x, at_mid.value};
    }

    // 33-point scan for the bracket, then golden section inside it.
    constexpr int kScan = 32;
    int best = 0;
    double best_val = val(a);
    for (int i = 1; i <= kScan; ++i) {
        const double x = a + (b - a) * i / kScan;
        const double v = val(x);
        if (v < best_val) {
            best_val = v;
            best = i;
        }
    }
    double lo = a + (b - a) * std::max(0, best - 1) / kScan;
    double hi = a + (b - a) * std::min(kScan, best + 1) / kScan;

    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    const double tol = 1e-10 * (b - a);
    double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
    double fc = val(c), fd = val(d);
    while (hi - lo > tol) {
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

    OptimizedX out{lo + (hi - lo) / 2, 0.0};
    out.value = val(out.x);
    if (best_val < out.value) out = {a + (b - a) * best / kScan, best_val};
    if (at_mid.value < out.value) out = {mid.x, at_mid.value};
    return out;
}

}  // namespace certquad
