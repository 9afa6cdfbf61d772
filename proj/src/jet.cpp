#include "certquad/jet.hpp"

#include "certquad/errors.hpp"

#include <cmath>
#include <span>
#include <vector>

// Taylor-coefficient propagation: every node carries the divided
// coefficients c_k = f^(k)(t)/k!, so products are Cauchy convolutions and
// each elementary function has an O(m^2) recurrence.  Output is rescaled
// by k! to plain derivatives.

namespace certquad {

namespace {

using Series = std::span<double>;
using CSeries = std::span<const double>;

void series_mul(CSeries a, CSeries b, Series out) {
    const int m = static_cast<int>(out.size()) - 1;
    for (int k = 0; k <= m; ++k) {
        double s = 0;
        for (int j = 0; j <= k; ++j) s += a[j] * b[k - j];
        out[k] = s;
    }
}

void series_div(CSeries a, CSeries b, double t, Series out) {
    if (b[0] == 0.0) throw DomainError("division by zero", t);
    const int m = static_cast<int>(out.size()) - 1;
    for (int k = 0; k <= m; ++k) {
        double s = a[k];
        for (int j = 0; j < k; ++j) s -= out[j] * b[k - j];
        out[k] = s / b[0];
    }
}

void series_exp(CSeries a, Series out) {
    const int m = static_cast<int>(out.size()) - 1;
    out[0] = std::exp(a[0]);
    for (int k = 1; k <= m; ++k) {
        double s = 0;
        for (int j = 1; j <= k; ++j) s += j * a[j] * out[k - j];
        out[k] = s / k;
    }
}

void series_log(CSeries a, double t, Series out) {
    if (a[0] <= 0.0) throw DomainError("log of a non-positive value", t);
    const int m = static_cast<int>(out.size()) - 1;
    out[0] = std::log(a[0]);
    for (int k = 1; k <= m; ++k) {
        double s = k * a[k];
        for (int j = 1; j < k; ++j) s -= j * out[j] * a[k - j];
        out[k] = s / (k * a[0]);
    }
}

// sin and cos propagate as a coupled pair.
void series_sincos(CSeries a, Series s_out, Series c_out) {
    const int m = static_cast<int>(s_out.size()) - 1;
    s_out[0] = std::sin(a[0]);
    c_out[0] = std::cos(a[0]);
    for (int k = 1; k <= m; ++k) {
        double s = 0, c = 0;
        for (int j = 1; j <= k; ++j) {
            s += j * a[j] * c_out[k - j];
            c -= j * a[j] * s_out[k - j];
        }
        s_out[k] = s / k;
        c_out[k] = c / k;
    }
}

void series_sqrt(CSeries a, double t, Series out) {
    const int m = static_cast<int>(out.size()) - 1;
    if (a[0] < 0.0) throw DomainError("sqrt of a negative value", t);
    if (a[0] == 0.0) {
        if (m == 0) { out[0] = 0.0; return; }
        throw DomainError("derivative of sqrt at a zero of its argument", t);
    }
    out[0] = std::sqrt(a[0]);
    for (int k = 1; k <= m; ++k) {
        double s = a[k];
        for (int j = 1; j < k; ++j) s -= out[j] * out[k - j];
        out[k] = s / (2 * out[0]);
    }
}

void series_pow(CSeries a, int e, double t, Series out, Series scratch) {
    const int m = static_cast<int>(out.size()) - 1;
    if (e < 0) {
        std::vector<double> pos(m + 1);
        series_pow(a, -e, t, Series(pos), scratch);
        std::vector<double> one(m + 1, 0.0);
        one[0] = 1.0;
        series_div(one, pos, t, out);
        return;
    }
    // exponentiation by squaring over the series
    std::fill(out.begin(), out.end(), 0.0);
    out[0] = 1.0;
    std::vector<double> base(a.begin(), a.end());
    while (e > 0) {
        if (e & 1) {
            series_mul(out, base, scratch);
            std::copy(scratch.begin(), scratch.end(), out.begin());
        }
        e >>= 1;
        if (e > 0) {
            series_mul(base, base, scratch);
            std::copy(scratch.begin(), scratch.end(), base.begin());
        }
    }
}

}  // namespace

Jet eval_jet(const ExpressionAst& f, double t, int m, int max_order) {
    if (m < 0) throw Error("jet order must be >= 0");
    if (m > max_order)
        throw OrderOverflow("jet order " + std::to_string(m) + " above cap " +
                            std::to_string(max_order));
    const auto& nodes = f.nodes();
    const int w = m + 1;
    std::vector<double> buf(nodes.size() * w, 0.0);
    std::vector<double> scratch(w), scratch3(w);
    auto series = [&](std::int32_t id) { return Series(buf.data() + id * w, w); };

    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const ExprNode& n = nodes[i];
        Series out = series(static_cast<std::int32_t>(i));
        switch (n.kind) {
            case NodeKind::Constant:
                out[0] = n.value;
                break;
            case NodeKind::Variable:
                out[0] = t;
                if (m >= 1) out[1] = 1.0;
                break;
            case NodeKind::Add: {
                Series l = series(n.lhs), r = series(n.rhs);
                for (int k = 0; k <= m; ++k) out[k] = l[k] + r[k];
                break;
            }
            case NodeKind::Sub: {
                Series l = series(n.lhs), r = series(n.rhs);
                for (int k = 0; k <= m; ++k) out[k] = l[k] - r[k];
                break;
            }
            case NodeKind::Neg: {
                Series l = series(n.lhs);
                for (int k = 0; k <= m; ++k) out[k] = -l[k];
                break;
            }
            case NodeKind::Mul:
                series_mul(series(n.lhs), series(n.rhs), out);
                break;
            case NodeKind::Div:
                series_div(series(n.lhs), series(n.rhs), t, out);
                break;
            case NodeKind::Pow:
                series_pow(series(n.lhs), n.exponent, t, out, scratch);
                break;
            case NodeKind::Exp:
                series_exp(series(n.lhs), out);
                break;
            case NodeKind::Log:
                series_log(series(n.lhs), t, out);
                break;
            case NodeKind::Sin:
                series_sincos(series(n.lhs), out, scratch3);
                break;
            case NodeKind::Cos:
                series_sincos(series(n.lhs), scratch3, out);
                break;
            case NodeKind::Sqrt:
                series_sqrt(series(n.lhs), t, out);
                break;
        }
    }

    Jet jet;
    jet.center = t;
    jet.d.assign(w, 0.0);
    Series root = series(f.root());
    double kfac = 1.0;
    for (int k = 0; k <= m; ++k) {
        if (k > 0) kfac *= k;
        jet.d[k] = root[k] * kfac;
    }
    return jet;
}

double eval_derivative(const ExpressionAst& f, double t, int m) {
    return eval_jet(f, t, m).d[m];
}

std::vector<Rational> eval_jet_exact(const ExpressionAst& f, const Rational& t, int m,
                                     int max_order) {
    if (!f.exact_capable())
        throw NotExactCapable("exact evaluation requires a polynomial tree: " + f.source());
    if (m < 0) throw Error("jet order must be >= 0");
    if (m > max_order)
        throw OrderOverflow("jet order " + std::to_string(m) + " above cap " +
                            std::to_string(max_order));
    const auto& nodes = f.nodes();
    const int w = m + 1;
    std::vector<std::vector<Rational>> buf(nodes.size(), std::vector<Rational>(w, Rational(0)));

    auto mul = [&](const std::vector<Rational>& a, const std::vector<Rational>& b) {
        std::vector<Rational> out(w, Rational(0));
        for (int k = 0; k <= m; ++k)
            for (int j = 0; j <= k; ++j) out[k] += a[j] * b[k - j];
        return out;
    };

    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const ExprNode& n = nodes[i];
        std::vector<Rational>& out = buf[i];
        switch (n.kind) {
            case NodeKind::Constant:
                out[0] = n.exact;
                break;
            case NodeKind::Variable:
                out[0] = t;
                if (m >= 1) out[1] = 1;
                break;
            case NodeKind::Add:
                for (int k = 0; k <= m; ++k) out[k] = buf[n.lhs][k] + buf[n.rhs][k];
                break;
            case NodeKind::Sub:
                for (int k = 0; k <= m; ++k) out[k] = buf[n.lhs][k] - buf[n.rhs][k];
                break;
            case NodeKind::Neg:
                for (int k = 0; k <= m; ++k) out[k] = -buf[n.lhs][k];
                break;
            case NodeKind::Mul:
                out = mul(buf[n.lhs], buf[n.rhs]);
                break;
            case NodeKind::Pow: {
                std::vector<Rational> acc(w, Rational(0));
                acc[0] = 1;
                std::vector<Rational> base = buf[n.lhs];
                int e = n.exponent;
                while (e > 0) {
                    if (e & 1) acc = mul(acc, base);
                    e >>= 1;
                    if (e > 0) base = mul(base, base);
                }
                out = std::move(acc);
                break;
            }
            default:
                throw NotExactCapable("exact evaluation requires a polynomial tree");
        }
    }

    std::vector<Rational> d(w);
    Rational kfac = 1;
    for (int k = 0; k <= m; ++k) {
        if (k > 0) kfac *= k;
        d[k] = buf[f.root()][k] * kfac;
    }
    return d;
}

}  // namespace certquad
