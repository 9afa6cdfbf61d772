#include "certquad/identity.hpp"

#include "certquad/errors.hpp"
#include "certquad/poly.hpp"

#include <cmath>

namespace certquad {
namespace {

BigInt factorial_big(int k) {
    BigInt f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

}  // namespace

void RuleParams::validate(int max_n) const {
    if (!(a < b)) throw Error("rule needs a < b");
    if (!(a <= x && x <= b)) throw Error("rule needs x in [a, b]");
    if (n < 1) throw Error("rule needs n >= 1");
    if (n > max_n)
        throw OrderOverflow("rule order " + std::to_string(n) + " above cap " +
                            std::to_string(max_n));
}

double pow_int(double base, int e) {
    if (e < 0) return 1.0 / pow_int(base, -e);
    double acc = 1.0, sq = base;
    while (e > 0) {
        if (e & 1) acc *= sq;
        e >>= 1;
        if (e > 0) sq *= sq;
    }
    return acc;
}

double factorial(int k) {
    static const std::vector<double> table = [] {
        std::vector<double> t(171);
        t[0] = 1.0;
        for (int i = 1; i <= 170; ++i) t[i] = t[i - 1] * i;
        return t;
    }();
    if (k < 0 || k > 170) throw Error("factorial argument out of double range");
    return table[k];
}

MomentSet kernel_moments(const RuleParams& p) {
    p.validate();
    const double xa = p.x - p.a, bx = p.b - p.x;
    const int n = p.n;
    MomentSet m;
    m.m1 = bx * pow_int(xa, n + 1) / (n + 1) + pow_int(xa, n + 2) / (n + 2);
    m.m2 = pow_int(xa, n + 2) / ((n + 1.0) * (n + 2.0));
    m.m3 = pow_int(bx, n + 1) * xa / (n + 1) + pow_int(bx, n + 2) / (n + 2);
    m.m4 = pow_int(bx, n + 2) / ((n + 1.0) * (n + 2.0));
    return m;
}

double quad_rule_from_jets(const RuleParams& p, std::span<const double> da,
                           std::span<const double> db) {
    p.validate();
    if (static_cast<int>(da.size()) < p.n || static_cast<int>(db.size()) < p.n)
        throw Error("endpoint jets shorter than the rule order");
    const double xa = p.x - p.a, bx = p.b - p.x;
    double q = 0.0, sign = 1.0;
    for (int k = 0; k < p.n; ++k) {
        q += (pow_int(xa, k + 1) * da[k] + sign * pow_int(bx, k + 1) * db[k]) /
             factorial(k + 1);
        sign = -sign;
    }
    return q;
}

double quad_rule(const ExpressionAst& f, const RuleParams& p) {
    p.validate();
    const Jet ja = eval_jet(f, p.a, p.n - 1);
    const Jet jb = eval_jet(f, p.b, p.n - 1);
    return quad_rule_from_jets(p, ja.d, jb.d);
}

double remainder_numeric(const ExpressionAst& f, const RuleParams& p,
                         const OracleConfig& cfg) {
    p.validate();
    auto kern = [&](double t) { return pow_int(p.x - t, p.n) * eval_derivative(f, t, p.n); };
    const OracleResult r = integrate_reference(kern, p.a, p.b, cfg);
    return r.value / factorial(p.n);
}

IdentityCheck verify_identity(const ExpressionAst& f, const RuleParams& p, double tau_id,
                              const OracleConfig& cfg) {
    p.validate();
    IdentityCheck out;

    if (f.exact_capable()) {
        // Everything is a rational polynomial: integral, rule and remainder
        // each come from their own defining formula, evaluated exactly, so
        // the residual measures the implementation and nothing else.
        const RationalPolynomial poly = RationalPolynomial::from_expr(f);
        const Rational ra(p.a), rb(p.b), rx(p.x);

        const Rational integral = poly.integral(ra, rb);

        const std::vector<Rational> da = eval_jet_exact(f, ra, p.n - 1);
        const std::vector<Rational> db = eval_jet_exact(f, rb, p.n - 1);
        Rational rule = 0;
        int sign = 1;
        Rational xa = rx - ra, bx = rb - rx;
        Rational xapow = xa, bxpow = bx;
        for (int k = 0; k < p.n; ++k) {
            rule += (xapow * da[k] + sign * bxpow * db[k]) / Rational(factorial_big(k + 1));
            xapow *= xa;
            bxpow *= bx;
            sign = -sign;
        }

        RationalPolynomial dn = poly;
        for (int k = 0; k < p.n; ++k) dn = dn.derivative();
        RationalPolynomial kernel({Rational(1)});
        const RationalPolynomial lin({rx, Rational(-1)});  // x - t
        for (int k = 0; k < p.n; ++k) kernel = kernel * lin;
        const Rational remainder =
            (kernel * dn).integral(ra, rb) / Rational(factorial_big(p.n));

        const Rational residual = integral - rule - remainder;
        out.integral = to_double(integral);
        out.rule = to_double(rule);
        out.remainder = to_double(remainder);
        out.residual = std::abs(to_double(residual));
        out.exact_path = true;
    } else {
        const OracleResult ref = integrate_reference(f, p.a, p.b, cfg);
        out.integral = ref.value;
        out.rule = quad_rule(f, p);
        // Order-n jet evaluations carry roundoff well above one ulp, so the
        // kernel integral gets an absolute budget sized from the residual
        // tolerance instead of the raw oracle setting.  The division by n!
        // in the remainder shrinks the kernel error by the same factor.
        OracleConfig kcfg = cfg;
        kcfg.abs_tol = std::max(
            cfg.abs_tol, 0.1 * tau_id * (1.0 + std::abs(ref.value)) * factorial(p.n));
        out.remainder = remainder_numeric(f, p, kcfg);
        out.residual = std::abs(out.integral - out.rule - out.remainder);
    }

    out.pass = out.residual <= tau_id * (1.0 + std::abs(out.integral));
    return out;
}

}  // namespace certquad
