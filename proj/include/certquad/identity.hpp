#ifndef CERTQUAD_IDENTITY_HPP
#define CERTQUAD_IDENTITY_HPP

#include "certquad/expr.hpp"
#include "certquad/jet.hpp"
#include "certquad/oracle.hpp"

#include <span>

namespace certquad {

// Parameters of the boundary-Taylor rule on [a,b]: derivative data of
// orders 0..n-1 at both endpoints, weighted by powers of (x-a) and (b-x).
struct RuleParams {
    double a = 0.0;
    double b = 1.0;
    double x = 0.5;
    int n = 1;

    void validate(int max_n = kDefaultMaxOrder) const;  // a<b, a<=x<=b, 1<=n<=cap
    double mid() const { return a + (b - a) / 2; }
};

// The four kernel moment integrals
//   M1 = int_a^x (x-t)^n (b-t) dt     M2 = int_a^x (x-t)^n (t-a) dt
//   M3 = int_x^b (t-x)^n (t-a) dt     M4 = int_x^b (t-x)^n (b-t) dt
struct MomentSet {
    double m1 = 0, m2 = 0, m3 = 0, m4 = 0;
};

// Closed forms:
//   M1 = (b-x)(x-a)^{n+1}/(n+1) + (x-a)^{n+2}/(n+2)
//   M2 = (x-a)^{n+2}/((n+1)(n+2))
//   M3 = (b-x)^{n+1}(x-a)/(n+1) + (b-x)^{n+2}/(n+2)
//   M4 = (b-x)^{n+2}/((n+1)(n+2))
MomentSet kernel_moments(const RuleParams& p);

// Q_n(f;x) = sum_{k=0}^{n-1} [ (x-a)^{k+1} f^(k)(a) + (-1)^k (b-x)^{k+1} f^(k)(b) ] / (k+1)!
double quad_rule(const ExpressionAst& f, const RuleParams& p);

// Same sum from precomputed endpoint jets (orders >= n-1).
double quad_rule_from_jets(const RuleParams& p, std::span<const double> da,
                           std::span<const double> db);

// Kernel remainder R = (1/n!) int_a^b (x-t)^n f^(n)(t) dt, evaluated by the
// reference oracle; int_a^b f = Q_n + R up to oracle tolerance.
double remainder_numeric(const ExpressionAst& f, const RuleParams& p,
                         const OracleConfig& cfg = {});

struct IdentityCheck {
    double integral = 0.0;   // oracle (or exact) value of int_a^b f
    double rule = 0.0;       // Q_n
    double remainder = 0.0;  // R
    double residual = 0.0;   // |integral - rule - remainder|
    bool pass = false;       // residual <= tau * (1 + |integral|)
    bool exact_path = false;
};

// Two independent computations of the identity. For exact-capable f both
// sides run on rationals and the residual is exact; otherwise the oracle
// integrates both f and the kernel.
IdentityCheck verify_identity(const ExpressionAst& f, const RuleParams& p,
                              double tau_id = 1e-9, const OracleConfig& cfg = {});

// Helpers shared with bounds/integrator.
double pow_int(double base, int e);     // exponentiation by squaring
double factorial(int k);                // exact in double through 22!, few-ulp beyond

}  // namespace certquad

#endif
