#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "certquad/convexity.hpp"
#include "certquad/errors.hpp"
#include "certquad/expr.hpp"

#include <cmath>

using namespace certquad;

TEST_CASE("plain function grid checks") {
    CHECK(check_convexity_fn([](double t) { return t * t; }, -1, 1).ok());
    CHECK_FALSE(check_convexity_fn([](double t) { return -t * t; }, -1, 1).ok());
    CHECK(check_convexity_fn([](double t) { return -t * t; }, -1, 1, true).ok());
    CHECK(check_convexity_fn([](double t) { return std::sqrt(t); }, 0, 4, true).ok());
}

TEST_CASE("affine functions pass both directions") {
    auto g = [](double t) { return 2 * t + 1; };
    CHECK(check_convexity_fn(g, 0, 3, false).ok());
    CHECK(check_convexity_fn(g, 0, 3, true).ok());
}

TEST_CASE("derivative magnitude convexity") {
    // f = x^4: |f''| = 12 x^2 is convex everywhere.
    ConvexityVerdict v =
        check_convexity(parse("x^4"), -1, 2, 2, ConvexityProperty::AbsNthConvex);
    CHECK(v.ok());
    CHECK(v.status == ConvexityStatus::VerifiedOnGrid);
    CHECK(v.m_grid == 129);
    CHECK(v.tau > 0);

    // f = sin: |f'| = |cos| has a concave arch on [0, 3].
    ConvexityVerdict bad =
        check_convexity(parse("sin(x)"), 0, 3, 1, ConvexityProperty::AbsNthConvex);
    CHECK_FALSE(bad.ok());
    CHECK(bad.status == ConvexityStatus::Violated);
    CHECK(bad.witness >= 0);
    CHECK(bad.witness <= 3);
}

TEST_CASE("powered concavity with q") {
    // f' = sqrt(x): |f'|^2 = x is affine, so concave; the jet at t = 0 has a
    // vertical tangent and exercises the endpoint extrapolation fallback.
    const ExpressionAst f = parse("2/3*sqrt(x^3)");
    ConvexityVerdict v =
        check_convexity(f, 0, 1, 1, ConvexityProperty::AbsNthQConcave, 2.0);
    CHECK(v.ok());
    CHECK(v.q == 2.0);

    // |f'|^2 = e^{2t} for f = exp is convex, not concave.
    ConvexityVerdict bad =
        check_convexity(parse("exp(x)"), 0, 1, 1, ConvexityProperty::AbsNthQConcave, 2.0);
    CHECK_FALSE(bad.ok());
}

TEST_CASE("absolute value restores convexity") {
    // g''' = 6x - 6 changes sign at 1; |g'''| is a V, convex on [0, 2].
    const ExpressionAst g = parse("1/4*x^4 - x^3");
    ConvexityVerdict v = check_convexity(g, 0, 2, 3, ConvexityProperty::AbsNthConvex);
    CHECK(v.ok());
}

TEST_CASE("grid size and tolerance knobs") {
    auto g = [](double t) { return t * t; };
    ConvexityVerdict v = check_convexity_fn(g, -1, 1, false, 8);
    CHECK(v.ok());
    CHECK(v.m_grid == 8);

    // A generous explicit tolerance forgives a slightly concave dent.
    auto dent = [](double t) { return 2 * t - 1e-6 * t * t * t * t; };
    CHECK_FALSE(check_convexity_fn(dent, -1, 1, false, 129, 1e-12).ok());
    CHECK(check_convexity_fn(dent, -1, 1, false, 129, 1e-2).ok());
}

TEST_CASE("interior domain errors propagate") {
    // Only endpoint failures are patched; a hole inside [a,b] is an error.
    auto g = [](double t) -> double {
        if (std::abs(t) < 0.1) throw DomainError("hole", t);
        return t * t;
    };
    CHECK_THROWS_AS(check_convexity_fn(g, -1, 1), DomainError);
}
