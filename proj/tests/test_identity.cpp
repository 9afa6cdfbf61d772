#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "certquad/errors.hpp"
#include "certquad/expr.hpp"
#include "certquad/identity.hpp"
#include "certquad/oracle.hpp"

#include <cmath>

using namespace certquad;
using doctest::Approx;

TEST_CASE("parameter validation") {
    CHECK_NOTHROW(RuleParams{0, 1, 0.5, 1}.validate());
    CHECK_THROWS_AS(RuleParams({1, 1, 1, 1}).validate(), Error);
    CHECK_THROWS_AS(RuleParams({1, 0, 0.5, 1}).validate(), Error);
    CHECK_THROWS_AS(RuleParams({0, 1, 1.5, 1}).validate(), Error);
    CHECK_THROWS_AS(RuleParams({0, 1, 0.5, 0}).validate(), Error);
    CHECK_THROWS_AS(RuleParams({0, 1, 0.5, 33}).validate(), OrderOverflow);
    CHECK(RuleParams({0, 3, 0, 1}).mid() == 1.5);
}

TEST_CASE("integer power and factorial helpers") {
    CHECK(pow_int(-2.0, 10) == 1024.0);
    CHECK(pow_int(3.0, 0) == 1.0);
    CHECK(pow_int(3.0, -2) == Approx(1.0 / 9).epsilon(1e-16));
    CHECK(factorial(0) == 1.0);
    CHECK(factorial(5) == 120.0);
    CHECK(factorial(22) == 1124000727777607680000.0);  // last exact double
    CHECK(factorial(170) > 7e306);
    CHECK_THROWS_AS(factorial(171), Error);
    CHECK_THROWS_AS(factorial(-1), Error);
}

TEST_CASE("frozen rule values for f = x^2 on [0,1]") {
    const ExpressionAst f = parse("x^2");
    // n = 1, x = 1/2: Q = 0*(x-a) + 2*(b-x) ... = 1/2.
    CHECK(quad_rule(f, {0, 1, 0.5, 1}) == Approx(0.5).epsilon(1e-15));
    // n = 2, x = 1/2: the first-derivative term subtracts a quarter.
    CHECK(quad_rule(f, {0, 1, 0.5, 2}) == Approx(0.25).epsilon(1e-15));
    // Remainders complete the integral 1/3.
    CHECK(remainder_numeric(f, {0, 1, 0.5, 1}, tight_oracle()) ==
          Approx(-1.0 / 6).epsilon(1e-12));
    CHECK(remainder_numeric(f, {0, 1, 0.5, 2}, tight_oracle()) ==
          Approx(1.0 / 12).epsilon(1e-12));
}

TEST_CASE("rule from explicit jets") {
    const ExpressionAst f = parse("exp(x)");
    const RuleParams p{0, 1, 0.25, 3};
    const Jet ja = eval_jet(f, 0.0, 2);
    const Jet jb = eval_jet(f, 1.0, 2);
    CHECK(quad_rule_from_jets(p, ja.d, jb.d) == Approx(quad_rule(f, p)).epsilon(1e-15));

    const double too_short[1] = {1.0};
    CHECK_THROWS_AS(quad_rule_from_jets(p, too_short, too_short), Error);
}

TEST_CASE("moment closed forms against direct integration") {
    const OracleConfig cfg = tight_oracle();
    for (const RuleParams p : {RuleParams{0, 1, 0.3, 2}, RuleParams{-2, 1.5, 0.25, 5},
                               RuleParams{1, 4, 1, 3}, RuleParams{-1, 1, 1, 4}}) {
        const MomentSet m = kernel_moments(p);
        const double a = p.a, b = p.b, x = p.x;
        const int n = p.n;
        const double m1 = integrate_reference(
            [&](double t) { return pow_int(x - t, n) * (b - t); }, a, x, cfg).value;
        const double m2 = integrate_reference(
            [&](double t) { return pow_int(x - t, n) * (t - a); }, a, x, cfg).value;
        const double m3 = integrate_reference(
            [&](double t) { return pow_int(t - x, n) * (t - a); }, x, b, cfg).value;
        const double m4 = integrate_reference(
            [&](double t) { return pow_int(t - x, n) * (b - t); }, x, b, cfg).value;
        CHECK(m.m1 == Approx(m1).epsilon(1e-12));
        CHECK(m.m2 == Approx(m2).epsilon(1e-12));
        CHECK(m.m3 == Approx(m3).epsilon(1e-12));
        CHECK(m.m4 == Approx(m4).epsilon(1e-12));
        CHECK(m.m1 >= 0);
        CHECK(m.m2 >= 0);
        CHECK(m.m3 >= 0);
        CHECK(m.m4 >= 0);
    }
}

TEST_CASE("moments mirror under interval reflection") {
    const MomentSet fwd = kernel_moments({0, 1, 0.3, 3});
    const MomentSet rev = kernel_moments({0, 1, 0.7, 3});
    CHECK(fwd.m1 == Approx(rev.m3).epsilon(1e-15));
    CHECK(fwd.m2 == Approx(rev.m4).epsilon(1e-15));
    CHECK(fwd.m3 == Approx(rev.m1).epsilon(1e-15));
    CHECK(fwd.m4 == Approx(rev.m2).epsilon(1e-15));
}

TEST_CASE("identity on the exact rational path") {
    const IdentityCheck c = verify_identity(parse("x^2"), {0, 1, 0.5, 2});
    CHECK(c.exact_path);
    CHECK(c.pass);
    CHECK(c.residual == 0.0);  // exact arithmetic end to end
    CHECK(c.integral == Approx(1.0 / 3).epsilon(1e-16));
    CHECK(c.rule == Approx(0.25).epsilon(1e-16));
    CHECK(c.remainder == Approx(1.0 / 12).epsilon(1e-16));

    // Sharper stress: degree 9, wide interval, asymmetric x, n = 6.
    const IdentityCheck d = verify_identity(
        parse("7/8*x^9 - 3*x^5 + 11/16*x^2 - 5"), {-2.5, 1.75, -0.625, 6});
    CHECK(d.exact_path);
    CHECK(d.residual == 0.0);
}

TEST_CASE("identity on the numeric oracle path") {
    const IdentityCheck c =
        verify_identity(parse("exp(x)"), {0, 1, 0.25, 3}, 1e-9, tight_oracle());
    CHECK_FALSE(c.exact_path);
    CHECK(c.pass);
    CHECK(c.integral == Approx(std::exp(1.0) - 1).epsilon(1e-12));
    CHECK(c.residual <= 1e-9 * (1 + c.integral));

    const IdentityCheck t =
        verify_identity(parse("sin(2*x) + x^3"), {-1, 2, 1.5, 4}, 1e-9, tight_oracle());
    CHECK(t.pass);
}

TEST_CASE("identity survives derivative evaluation noise") {
    // Nested square roots give the order-6 derivative several digits of
    // evaluation jitter; the kernel integration must absorb it instead of
    // refining forever or erroring out.
    const ExpressionAst f = parse(
        "1073741824/1539272109375*sqrt(sqrt((15/16*x + (-1))^26)) + -2 + 9/16*x + "
        "15/16*x^2 + 27/16*x^3 + 11/16*x^4 - 3/4*x^5");
    const IdentityCheck c =
        verify_identity(f, {2, 4.6875, 4.3095703125, 6}, 1e-9, tight_oracle());
    CHECK_FALSE(c.exact_path);
    CHECK(c.pass);
}
