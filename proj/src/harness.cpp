#include "certquad/harness.hpp"

#include "certquad/errors.hpp"
#include "certquad/identity.hpp"
#include "certquad/jet.hpp"
#include "certquad/oracle.hpp"
#include "certquad/poly.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

namespace certquad {

TrialRng::TrialRng(std::uint64_t seed, long index)
    : state_(seed ^ (0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(index) + 1))) {
    next();
    next();
}

// splitmix64.  <random> engines are specified, but the standard leaves the
// distribution algorithms open, and records must reproduce bit-identically
// from (seed, index) everywhere.
std::uint64_t TrialRng::next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double TrialRng::uniform(double lo, double hi) {
    return lo + (hi - lo) * ((next() >> 11) * 0x1.0p-53);
}

long TrialRng::uniform_int(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
}

namespace {

constexpr double kHolderPs[] = {1.1, 1.5, 2.0, 3.0, 10.0};

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (unsigned char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (ch < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                    out += buf;
                } else {
                    out += static_cast<char>(ch);
                }
        }
    }
    return out;
}

// Rendered so the string can follow '*' or '(' unambiguously.
std::string rat_src(const Rational& r) {
    if (r < 0) return "(-" + to_string(Rational(-r)) + ")";
    return to_string(r);
}

std::string poly_source(const RationalPolynomial& poly) {
    const auto& c = poly.coeffs();
    std::string out;
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k] == 0) continue;
        const bool neg = c[k] < 0;
        std::string term = to_string(neg ? Rational(-c[k]) : c[k]);
        if (k >= 1) term += "*x";
        if (k >= 2) term += "^" + std::to_string(k);
        if (out.empty())
            out = neg ? "-" + term : term;
        else
            out += (neg ? " - " : " + ") + term;
    }
    return out.empty() ? "0" : out;
}

struct Interval {
    Rational a, len;
    double a_d = 0, b_d = 0;
};

// a in [-3,3], length in [1/8,4], both dyadic so every derived point
// (midpoint, 64ths) converts to double exactly.
Interval draw_interval(TrialRng& rng) {
    Interval iv;
    iv.a = Rational(rng.uniform_int(-48, 48), 16);
    iv.len = Rational(rng.uniform_int(2, 64), 16);
    iv.a_d = to_double(iv.a);
    iv.b_d = to_double(iv.a + iv.len);
    return iv;
}

double draw_x(TrialRng& rng, const TrialFunction& tf) {
    const long k = rng.uniform_int(0, 64);
    return tf.a + (tf.b - tf.a) * (static_cast<double>(k) / 64.0);
}

Rational dyadic16(TrialRng& rng, long lo16, long hi16) {
    return Rational(rng.uniform_int(lo16, hi16), 16);
}

// Degree < n, so it never shows up in f^(n).
RationalPolynomial draw_tail(TrialRng& rng, int n) {
    std::vector<Rational> c(static_cast<std::size_t>(n));
    for (auto& v : c) v = dyadic16(rng, -32, 32);
    return RationalPolynomial(std::move(c));
}

TrialFunction make_tf(std::string source, const Interval& iv, int n) {
    TrialFunction tf;
    tf.source = std::move(source);
    tf.ast = parse(tf.source);
    tf.a = iv.a_d;
    tf.b = iv.b_d;
    tf.n = n;
    return tf;
}

// f^(n) = c2 (t - r)^2 + s with c2, s >= 0: nonnegative and convex, and so
// is every power of it.
TrialFunction draw_poly_nonneg(TrialRng& rng, int n) {
    const Interval iv = draw_interval(rng);
    const Rational c2 = dyadic16(rng, 0, 32);
    const Rational r = dyadic16(rng, -80, 80);
    const Rational s = dyadic16(rng, 0, 32);
    RationalPolynomial f({c2 * r * r + s, Rational(-2) * c2 * r, c2});
    for (int k = 0; k < n; ++k) f = f.antiderivative();
    f = f + draw_tail(rng, n);
    return make_tf(poly_source(f), iv, n);
}

// f^(n) = alpha beta^n exp(beta t): |f^(n)|^q is a positive exponential,
// convex for every q >= 1.
TrialFunction draw_exp_scaled(TrialRng& rng, int n, bool force_positive) {
    const Interval iv = draw_interval(rng);
    Rational alpha = dyadic16(rng, 4, 32);
    if (!force_positive && rng.uniform_int(0, 1) == 1) alpha = -alpha;
    Rational beta = dyadic16(rng, 4, 24);
    if (rng.uniform_int(0, 1) == 1) beta = -beta;
    std::string src = rat_src(alpha) + "*exp(" + rat_src(beta) + "*x)";
    const std::string tail = poly_source(draw_tail(rng, n));
    if (tail != "0") src += " + " + tail;
    return make_tf(std::move(src), iv, n);
}

// f^(n) = (alpha t + beta)^e with dyadic e = m/2^j <= 1/q and
// alpha t + beta >= 1/4 on [a,b]; then |f^(n)|^q = u^{eq} with eq <= 1 is
// concave.  The n-fold antiderivative is u^{e+n} / (alpha^n prod(e+i)),
// written as j nested sqrt calls around an integer power.
TrialFunction draw_sqrt_concave(TrialRng& rng, int n, double q) {
    const Interval iv = draw_interval(rng);
    const int j = (q <= 4.0) ? 2 : 4;
    const long pow2 = 1L << j;
    const long mmax = std::max(1L, static_cast<long>(std::floor(pow2 / q)));
    const long m = rng.uniform_int(1, mmax);
    const Rational e(m, pow2);

    const Rational alpha = dyadic16(rng, 4, 16);
    const Rational beta = Rational(1, 4) - alpha * iv.a + dyadic16(rng, 0, 32);
    Rational c = 1;
    for (int i = 1; i <= n; ++i) c *= (e + i) * alpha;

    const long big_m = m + n * pow2;
    std::string core = "(" + rat_src(alpha) + "*x + " + rat_src(beta) + ")^" +
                       std::to_string(big_m);
    for (int i = 0; i < j; ++i) core = "sqrt(" + core + ")";
    std::string src = rat_src(Rational(1) / c) + "*" + core;
    const std::string tail = poly_source(draw_tail(rng, n));
    if (tail != "0") src += " + " + tail;

    TrialFunction tf = make_tf(std::move(src), iv, n);
    tf.q = q;
    return tf;
}

TrialFunction draw_trig(TrialRng& rng, int n) {
    const Interval iv = draw_interval(rng);
    const Rational alpha = dyadic16(rng, -32, 32);
    const Rational omega = dyadic16(rng, 4, 32);
    const Rational phi = dyadic16(rng, 0, 96);
    std::string src =
        rat_src(alpha) + "*sin(" + rat_src(omega) + "*x + " + rat_src(phi) + ")";
    const std::string tail = poly_source(draw_tail(rng, n));
    if (tail != "0") src += " + " + tail;
    return make_tf(std::move(src), iv, n);
}

TrialFunction draw_poly_exact(TrialRng& rng, int n) {
    const Interval iv = draw_interval(rng);
    const long deg = rng.uniform_int(0, std::min(n + 3, 10));
    std::vector<Rational> c(static_cast<std::size_t>(deg) + 1);
    for (auto& v : c) v = dyadic16(rng, -64, 64);
    return make_tf(poly_source(RationalPolynomial(std::move(c))), iv, n);
}

TrialRng make_rng(Suite suite, std::uint64_t seed, long index) {
    const std::uint64_t mixed =
        seed ^ (0xA24BAED4963EE407ULL * (static_cast<std::uint64_t>(suite) + 1));
    return TrialRng(mixed, index);
}

void finalize(TrialRecord& rec) {
    rec.margin = rec.rhs - rec.lhs;
    rec.pass = rec.margin >= -1e-9 * (1.0 + std::abs(rec.lhs));
}

// Rational twin of quad_rule_from_jets, for suites that need the true error
// of a polynomial rule exactly (the interesting digits cancel in doubles).
Rational exact_rule(const ExpressionAst& f, const Rational& a, const Rational& b,
                    const Rational& x, int n) {
    const std::vector<Rational> da = eval_jet_exact(f, a, n - 1);
    const std::vector<Rational> db = eval_jet_exact(f, b, n - 1);
    Rational rule = 0, xap = x - a, bxp = b - x;
    const Rational xa = xap, bx = bxp;
    BigInt kfac = 1;
    int sign = 1;
    for (int k = 0; k < n; ++k) {
        kfac *= k + 1;
        rule += (xap * da[k] + sign * bxp * db[k]) / Rational(kfac);
        xap *= xa;
        bxp *= bx;
        sign = -sign;
    }
    return rule;
}

TrialRecord run_trial_impl(Suite suite, std::uint64_t seed, long index) {
    TrialRng rng = make_rng(suite, seed, index);
    TrialRecord rec;
    rec.suite = suite_name(suite);
    rec.seed = seed;
    rec.index = index;
    const OracleConfig oracle = tight_oracle();

    switch (suite) {
        case Suite::LemmaIdentity: {
            const int n = static_cast<int>(rng.uniform_int(1, 8));
            constexpr FamilyKind kinds[] = {FamilyKind::PolyExact, FamilyKind::PolyNonnegNth,
                                            FamilyKind::ExpScaled, FamilyKind::SqrtConcaveQ,
                                            FamilyKind::TrigWindow};
            TrialFunction tf = draw_function(kinds[rng.uniform_int(0, 4)], rng, n, 2.0);
            const RuleParams params{tf.a, tf.b, draw_x(rng, tf), n};
            const IdentityCheck chk = verify_identity(tf.ast, params, 1e-9, oracle);
            rec.fn = tf.source;
            rec.a = tf.a;
            rec.b = tf.b;
            rec.x = params.x;
            rec.n = n;
            rec.lhs = chk.residual / (1.0 + std::abs(chk.integral));
            rec.rhs = 1e-9;
            break;
        }

        case Suite::Thm21:
        case Suite::Cor11:
        case Suite::Cor12:
        case Suite::Thm22: {
            const int n =
                (suite == Suite::Cor12) ? 1 : static_cast<int>(rng.uniform_int(1, 8));
            const FamilyKind kind = (rng.uniform_int(0, 1) == 0) ? FamilyKind::PolyNonnegNth
                                                                 : FamilyKind::ExpScaled;
            TrialFunction tf = draw_function(kind, rng, n, 2.0);
            RuleParams params{tf.a, tf.b, draw_x(rng, tf), n};
            BoundFamily bf = BoundFamily::ConvexT21;
            if (suite == Suite::Cor11) {
                bf = BoundFamily::MidpointC11;
                params.x = params.mid();
            } else if (suite == Suite::Cor12) {
                bf = BoundFamily::N1C12;
            } else if (suite == Suite::Thm22) {
                bf = BoundFamily::HolderT22;
                rec.p = kHolderPs[rng.uniform_int(0, 4)];
                rec.q = rec.p / (rec.p - 1.0);
            }
            const Jet ja = eval_jet(tf.ast, params.a, n);
            const Jet jb = eval_jet(tf.ast, params.b, n);
            const double integral =
                integrate_reference(tf.ast, params.a, params.b, oracle).value;
            rec.fn = tf.source;
            rec.a = params.a;
            rec.b = params.b;
            rec.x = params.x;
            rec.n = n;
            rec.lhs = std::abs(integral - quad_rule_from_jets(params, ja.d, jb.d));
            rec.rhs = bound_value(bf, params, rec.p, std::abs(ja.d[n]), std::abs(jb.d[n]), 0.0);
            break;
        }

        case Suite::Thm23: {
            const int n = static_cast<int>(rng.uniform_int(1, 8));
            rec.p = kHolderPs[rng.uniform_int(0, 4)];
            rec.q = rec.p / (rec.p - 1.0);
            TrialFunction tf = draw_function(FamilyKind::SqrtConcaveQ, rng, n, rec.q);
            const RuleParams params{tf.a, tf.b, draw_x(rng, tf), n};
            const double integral =
                integrate_reference(tf.ast, params.a, params.b, oracle).value;
            const double fmid = std::abs(eval_derivative(tf.ast, params.mid(), n));
            rec.fn = tf.source;
            rec.a = params.a;
            rec.b = params.b;
            rec.x = params.x;
            rec.n = n;
            rec.lhs = std::abs(integral - quad_rule(tf.ast, params));
            rec.rhs = bound_value_concave(params, rec.p, fmid);
            break;
        }

        case Suite::Thm11:
        case Suite::Thm12: {
            const FamilyKind kind = (rng.uniform_int(0, 1) == 0) ? FamilyKind::PolyNonnegNth
                                                                 : FamilyKind::ExpScaled;
            TrialFunction tf = draw_function(kind, rng, 1, 2.0);
            const double a = tf.a, b = tf.b;
            const double integral = integrate_reference(tf.ast, a, b, oracle).value;
            const double fa = std::abs(eval_derivative(tf.ast, a, 1));
            const double fb = std::abs(eval_derivative(tf.ast, b, 1));
            rec.fn = tf.source;
            rec.a = a;
            rec.b = b;
            rec.x = a + (b - a) / 2;
            rec.n = 1;
            rec.lhs = std::abs((tf.ast(a) + tf.ast(b)) / 2 - integral / (b - a));
            if (suite == Suite::Thm12) {
                rec.p = kHolderPs[rng.uniform_int(0, 4)];
                rec.q = rec.p / (rec.p - 1.0);
                rec.rhs = bound_value_da_t12(a, b, rec.p, fa, fb);
            } else {
                rec.rhs = bound_value_da_t11(a, b, fa, fb);
            }
            break;
        }

        case Suite::Hh: {
            // f'' = nonnegative quadratic, so f itself is convex.
            TrialFunction tf = draw_function(FamilyKind::PolyNonnegNth, rng, 2, 2.0);
            const double a = tf.a, b = tf.b;
            const double mean = integrate_reference(tf.ast, a, b, oracle).value / (b - a);
            const double lower = tf.ast(a + (b - a) / 2);
            const double upper = (tf.ast(a) + tf.ast(b)) / 2;
            rec.fn = tf.source;
            rec.a = a;
            rec.b = b;
            rec.x = a + (b - a) / 2;
            rec.n = 2;
            rec.lhs = std::max(lower - mean, mean - upper);  // worst side; <= 0 when sound
            rec.rhs = 0.0;
            break;
        }

        case Suite::Reductions: {
            // Synthetic endpoint data; each closed-form reduction must agree
            // with its general form to floating-point accuracy.
            const Interval iv = draw_interval(rng);
            const double a = iv.a_d, b = iv.b_d;
            const double fa = rng.uniform(0.0, 3.0);
            const double fb = rng.uniform(0.0, 3.0);
            const int n = static_cast<int>(rng.uniform_int(1, 8));
            const double hp = kHolderPs[rng.uniform_int(0, 4)];
            const double mid = a + (b - a) / 2;
            auto rel = [](double u, double v) {
                const double denom = std::max(std::abs(u), std::abs(v));
                return denom == 0.0 ? 0.0 : std::abs(u - v) / denom;
            };
            const double d1 = rel(bound_value_n1(a, b, mid, fa, fb),
                                  (b - a) * bound_value_da_t11(a, b, fa, fb));
            const double d2 = rel(bound_value_holder({a, b, mid, 1}, hp, fa, fb),
                                  (b - a) * bound_value_da_t12(a, b, hp, fa, fb));
            const double d3 = rel(bound_value_convex({a, b, mid, n}, fa, fb),
                                  bound_value_midpoint(a, b, n, fa, fb));
            char buf[96];
            std::snprintf(buf, sizeof buf, "synthetic Fa=%.6g Fb=%.6g", fa, fb);
            rec.fn = buf;
            rec.a = a;
            rec.b = b;
            rec.x = mid;
            rec.n = n;
            rec.p = hp;
            rec.q = hp / (hp - 1.0);
            rec.lhs = std::max({d1, d2, d3});
            rec.rhs = 1e-12;
            break;
        }

        case Suite::Tightness: {
            // Even n with constant f^(n) at the midpoint rule: the bound
            // equals the true error.  Both sides of that equality are
            // computed exactly in rationals.
            const Interval iv = draw_interval(rng);
            const int n = 2 * static_cast<int>(rng.uniform_int(1, 4));
            Rational c = dyadic16(rng, 8, 64);
            if (rng.uniform_int(0, 1) == 1) c = -c;
            BigInt nfac = 1;
            for (int i = 2; i <= n; ++i) nfac *= i;
            std::vector<Rational> lead(static_cast<std::size_t>(n) + 1, Rational(0));
            lead[n] = c / Rational(nfac);
            const RationalPolynomial f = RationalPolynomial(std::move(lead)) + draw_tail(rng, n);
            TrialFunction tf = make_tf(poly_source(f), iv, n);
            const Rational ra(tf.a), rb(tf.b);
            const Rational rx = ra + (rb - ra) / 2;
            const Rational err = f.integral(ra, rb) - exact_rule(tf.ast, ra, rb, rx, n);
            const RuleParams params{tf.a, tf.b, to_double(rx), n};
            const double cd = std::abs(to_double(c));
            rec.fn = tf.source;
            rec.a = tf.a;
            rec.b = tf.b;
            rec.x = params.x;
            rec.n = n;
            rec.lhs = std::abs(to_double(err));
            rec.rhs = bound_value_convex(params, cd, cd);
            break;
        }
    }

    finalize(rec);
    return rec;
}

}  // namespace

const char* suite_name(Suite s) {
    switch (s) {
        case Suite::LemmaIdentity: return "lemma-identity";
        case Suite::Thm21: return "thm21";
        case Suite::Cor11: return "cor11";
        case Suite::Cor12: return "cor12";
        case Suite::Thm22: return "thm22";
        case Suite::Thm23: return "thm23";
        case Suite::Thm11: return "thm11";
        case Suite::Thm12: return "thm12";
        case Suite::Hh: return "hh";
        case Suite::Reductions: return "reductions";
        case Suite::Tightness: return "tightness";
    }
    throw Error("unreachable suite");
}

std::optional<Suite> suite_from_name(const std::string& name) {
    for (Suite s : all_suites())
        if (name == suite_name(s)) return s;
    return std::nullopt;
}

std::vector<Suite> all_suites() {
    return {Suite::LemmaIdentity, Suite::Thm21,  Suite::Cor11, Suite::Cor12,
            Suite::Thm22,         Suite::Thm23,  Suite::Thm11, Suite::Thm12,
            Suite::Hh,            Suite::Reductions, Suite::Tightness};
}

TrialFunction draw_function(FamilyKind kind, TrialRng& rng, int n, double q) {
    if (n < 1) throw Error("family draw needs n >= 1");
    switch (kind) {
        case FamilyKind::PolyNonnegNth: return draw_poly_nonneg(rng, n);
        case FamilyKind::ExpScaled: return draw_exp_scaled(rng, n, false);
        case FamilyKind::SqrtConcaveQ: return draw_sqrt_concave(rng, n, q);
        case FamilyKind::TrigWindow: return draw_trig(rng, n);
        case FamilyKind::PolyExact: return draw_poly_exact(rng, n);
    }
    throw Error("unreachable family kind");
}

TrialRecord run_trial(Suite suite, std::uint64_t seed, long index) {
    try {
        return run_trial_impl(suite, seed, index);
    } catch (const std::exception& e) {
        TrialRecord rec;
        rec.suite = suite_name(suite);
        rec.fn = std::string("error: ") + e.what();
        rec.seed = seed;
        rec.index = index;
        rec.margin = -1.0;
        rec.pass = false;
        return rec;
    }
}

SuiteRun run_suite(Suite suite, long trials, std::uint64_t seed, int threads) {
    if (trials < 1) throw Error("trials must be >= 1");
    SuiteRun run;
    run.records.resize(static_cast<std::size_t>(trials));

    const int workers = static_cast<int>(std::max<long>(1, std::min<long>(threads, trials)));
    if (workers == 1) {
        for (long i = 0; i < trials; ++i) run.records[i] = run_trial(suite, seed, i);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&run, suite, seed, trials, workers, w] {
                for (long i = w; i < trials; i += workers)
                    run.records[i] = run_trial(suite, seed, i);
            });
        for (auto& t : pool) t.join();
    }

    SuiteSummary& s = run.summary;
    s.suite = suite;
    s.trials = trials;
    s.min_margin = std::numeric_limits<double>::infinity();
    for (long i = 0; i < trials; ++i) {
        const TrialRecord& r = run.records[i];
        if (r.pass) ++s.passes;
        if (r.margin < s.min_margin) {
            s.min_margin = r.margin;
            s.argmin_index = i;
        }
        if (suite == Suite::Reductions || suite == Suite::LemmaIdentity) {
            s.max_discrepancy = std::max(s.max_discrepancy, r.lhs);
        } else if (suite == Suite::Tightness) {
            const double denom = std::max({std::abs(r.lhs), std::abs(r.rhs), 1e-300});
            s.max_discrepancy = std::max(s.max_discrepancy, std::abs(r.margin) / denom);
        }
    }
    s.all_pass = (s.passes == trials);
    return run;
}

namespace {

void emit_json(const std::vector<TrialRecord>& records, std::ostream& out) {
    out << "[\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
        const TrialRecord& r = records[i];
        out << "  {\"suite\":\"" << json_escape(r.suite) << "\",\"fn\":\"" << json_escape(r.fn)
            << "\",\"a\":" << fmt17(r.a) << ",\"b\":" << fmt17(r.b) << ",\"x\":" << fmt17(r.x)
            << ",\"n\":" << r.n << ",\"p\":" << fmt17(r.p) << ",\"q\":" << fmt17(r.q)
            << ",\"lhs\":" << fmt17(r.lhs) << ",\"rhs\":" << fmt17(r.rhs)
            << ",\"margin\":" << fmt17(r.margin) << ",\"pass\":" << (r.pass ? "true" : "false")
            << ",\"seed\":" << r.seed << ",\"index\":" << r.index << "}"
            << (i + 1 < records.size() ? "," : "") << "\n";
    }
    out << "]\n";
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        out += ch;
        if (ch == '"') out += '"';
    }
    out += '"';
    return out;
}

void emit_csv(const std::vector<TrialRecord>& records, std::ostream& out) {
    out << "suite,fn,a,b,x,n,p,q,lhs,rhs,margin,pass,seed,index\n";
    for (const TrialRecord& r : records) {
        out << r.suite << ',' << csv_quote(r.fn) << ',' << fmt17(r.a) << ',' << fmt17(r.b)
            << ',' << fmt17(r.x) << ',' << r.n << ',' << fmt17(r.p) << ',' << fmt17(r.q)
            << ',' << fmt17(r.lhs) << ',' << fmt17(r.rhs) << ',' << fmt17(r.margin) << ','
            << (r.pass ? "true" : "false") << ',' << r.seed << ',' << r.index << '\n';
    }
}

void emit_text(const std::vector<TrialRecord>& records, std::ostream& out) {
    char line[320];
    std::snprintf(line, sizeof line, "%-14s %8s %5s %14s %14s %14s  %s\n", "suite", "index",
                  "pass", "margin", "lhs", "rhs", "fn");
    out << line;
    long passes = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    long argmin = -1;
    for (const TrialRecord& r : records) {
        std::snprintf(line, sizeof line, "%-14s %8ld %5s %14.6e %14.6e %14.6e  %.80s\n",
                      r.suite.c_str(), r.index, r.pass ? "ok" : "FAIL", r.margin, r.lhs,
                      r.rhs, r.fn.c_str());
        out << line;
        if (r.pass) ++passes;
        if (r.margin < min_margin) {
            min_margin = r.margin;
            argmin = r.index;
        }
    }
    std::snprintf(line, sizeof line,
                  "records %zu  pass %ld  fail %zu  min margin %.6e at index %ld\n",
                  records.size(), passes, records.size() - passes, min_margin, argmin);
    out << line;
}

}  // namespace

void emit_report(const std::vector<TrialRecord>& records, ReportFormat format,
                 std::ostream& out) {
    if (records.empty()) throw Error("no records to report");
    switch (format) {
        case ReportFormat::Json: emit_json(records, out); break;
        case ReportFormat::Csv: emit_csv(records, out); break;
        case ReportFormat::Text: emit_text(records, out); break;
    }
    if (!out) throw Error("report write failed");
}

void emit_report(const std::vector<TrialRecord>& records, ReportFormat format,
                 const std::string& path) {
    std::ofstream f(path);
    if (!f) throw Error("cannot open " + path);
    emit_report(records, format, f);
    f.flush();
    if (!f) throw Error("report write failed: " + path);
}

std::vector<TrialRecord> parse_records_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("bad records json: ") + e.what());
    }
    if (!j.is_array()) throw Error("records json must be an array");
    std::vector<TrialRecord> out;
    out.reserve(j.size());
    try {
        for (const auto& e : j) {
            TrialRecord r;
            r.suite = e.at("suite").get<std::string>();
            r.fn = e.at("fn").get<std::string>();
            r.a = e.at("a").get<double>();
            r.b = e.at("b").get<double>();
            r.x = e.at("x").get<double>();
            r.n = e.at("n").get<int>();
            r.p = e.at("p").get<double>();
            r.q = e.at("q").get<double>();
            r.lhs = e.at("lhs").get<double>();
            r.rhs = e.at("rhs").get<double>();
            r.margin = e.at("margin").get<double>();
            r.pass = e.at("pass").get<bool>();
            r.seed = e.at("seed").get<std::uint64_t>();
            r.index = e.at("index").get<long>();
            out.push_back(std::move(r));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("bad record field: ") + e.what());
    }
    return out;
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(std::move(cur));
    return out;
}

}  // namespace

std::vector<TrialRecord> parse_records_csv(const std::string& csv_text) {
    std::istringstream in(csv_text);
    std::string line;
    auto strip_cr = [](std::string& s) {
        if (!s.empty() && s.back() == '\r') s.pop_back();
    };
    if (!std::getline(in, line)) throw Error("empty records csv");
    strip_cr(line);
    if (line != "suite,fn,a,b,x,n,p,q,lhs,rhs,margin,pass,seed,index")
        throw Error("unexpected csv header: " + line);

    std::vector<TrialRecord> out;
    while (std::getline(in, line)) {
        strip_cr(line);
        if (line.empty()) continue;
        const std::vector<std::string> f = split_csv(line);
        if (f.size() != 14) throw Error("bad csv row: " + line);
        TrialRecord r;
        r.suite = f[0];
        r.fn = f[1];
        r.a = std::strtod(f[2].c_str(), nullptr);
        r.b = std::strtod(f[3].c_str(), nullptr);
        r.x = std::strtod(f[4].c_str(), nullptr);
        r.n = static_cast<int>(std::strtol(f[5].c_str(), nullptr, 10));
        r.p = std::strtod(f[6].c_str(), nullptr);
        r.q = std::strtod(f[7].c_str(), nullptr);
        r.lhs = std::strtod(f[8].c_str(), nullptr);
        r.rhs = std::strtod(f[9].c_str(), nullptr);
        r.margin = std::strtod(f[10].c_str(), nullptr);
        r.pass = (f[11] == "true");
        r.seed = std::strtoull(f[12].c_str(), nullptr, 10);
        r.index = std::strtol(f[13].c_str(), nullptr, 10);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<RatioRow> ratio_profile(const ExpressionAst& f, double a, double b, int n,
                                    const std::vector<double>& x_grid, BoundFamily family,
                                    double hp) {
    if (is_mean_form(family)) throw Error("mean-form families have no x profile");
    const RuleParams base{a, b, a + (b - a) / 2, n};
    const BoundReport rep = bound_report(f, family, base, hp, {});
    const double integral = integrate_reference(f, a, b, tight_oracle()).value;
    const Jet ja = eval_jet(f, a, n), jb = eval_jet(f, b, n);

    std::vector<RatioRow> rows;
    rows.reserve(x_grid.size());
    for (double x : x_grid) {
        if (!(x >= a && x <= b)) throw Error("profile grid point outside [a, b]");
        const RuleParams params{a, b, x, n};
        const double lhs = std::abs(integral - quad_rule_from_jets(params, ja.d, jb.d));
        const double bound = bound_value(family, params, hp, rep.fa, rep.fb, rep.fmid);
        const double ratio = bound > 0 ? lhs / bound : 1.0;
        rows.push_back({x, ratio, ratio, ratio});
    }
    return rows;
}

std::vector<RatioRow> ratio_profile(FamilyKind family_kind, int n,
                                    const std::vector<double>& x_grid, long trials,
                                    std::uint64_t seed, BoundFamily family, double hp) {
    if (is_mean_form(family)) throw Error("mean-form families have no x profile");
    if (trials < 1) throw Error("trials must be >= 1");
    for (double u : x_grid)
        if (!(u >= 0.0 && u <= 1.0)) throw Error("relative grid point outside [0, 1]");

    const double cq = hp > 1.0 ? hp / (hp - 1.0) : 2.0;
    std::vector<RatioRow> rows(x_grid.size());
    for (std::size_t gi = 0; gi < x_grid.size(); ++gi)
        rows[gi] = {x_grid[gi], 0.0, std::numeric_limits<double>::infinity(),
                    -std::numeric_limits<double>::infinity()};

    for (long t = 0; t < trials; ++t) {
        TrialRng rng(seed, t);
        TrialFunction tf = draw_function(family_kind, rng, n, cq);
        const double integral = integrate_reference(tf.ast, tf.a, tf.b, tight_oracle()).value;
        const Jet ja = eval_jet(tf.ast, tf.a, n), jb = eval_jet(tf.ast, tf.b, n);
        const double fa = std::abs(ja.d[n]), fb = std::abs(jb.d[n]);
        const double fmid =
            (family == BoundFamily::ConcaveT23)
                ? std::abs(eval_derivative(tf.ast, tf.a + (tf.b - tf.a) / 2, n))
                : 0.0;
        for (std::size_t gi = 0; gi < x_grid.size(); ++gi) {
            const double x = tf.a + (tf.b - tf.a) * x_grid[gi];
            const RuleParams params{tf.a, tf.b, x, n};
            const double lhs = std::abs(integral - quad_rule_from_jets(params, ja.d, jb.d));
            const double bound = bound_value(family, params, hp, fa, fb, fmid);
            const double ratio = bound > 0 ? lhs / bound : 1.0;
            rows[gi].mean += ratio;
            rows[gi].min = std::min(rows[gi].min, ratio);
            rows[gi].max = std::max(rows[gi].max, ratio);
        }
    }
    for (RatioRow& r : rows) r.mean /= static_cast<double>(trials);
    return rows;
}

}  // namespace certquad
