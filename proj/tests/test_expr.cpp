#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "certquad/errors.hpp"
#include "certquad/expr.hpp"

#include <cmath>

using namespace certquad;

TEST_CASE("constants and the variable") {
    CHECK(parse("42")(0.0) == 42.0);
    CHECK(parse("x")(3.5) == 3.5);
    CHECK(parse("0.25")(9.0) == 0.25);
    CHECK(parse("3/4")(0.0) == 0.75);
    CHECK(parse("2/4")(0.0) == 0.5);  // literal reduces to 1/2
}

TEST_CASE("leading zeros are decimal, not a base prefix") {
    CHECK(parse("09")(0.0) == 9.0);
    CHECK(parse("012")(0.0) == 12.0);
    CHECK(parse("0.0625")(0.0) == 0.0625);
    CHECK(parse("08/016")(0.0) == 0.5);
    CHECK(parse("x^02")(3.0) == 9.0);
    CHECK(parse("0")(1.0) == 0.0);
    CHECK(parse("0.0")(1.0) == 0.0);
}

TEST_CASE("arithmetic and precedence") {
    CHECK(parse("2*x + 1")(3.0) == 7.0);
    CHECK(parse("x - 2*x")(5.0) == -5.0);
    CHECK(parse("6/3")(0.0) == 2.0);
    CHECK(parse("1/2*x")(4.0) == 2.0);       // (1/2) * x, literal then mul
    CHECK(parse("-x^2")(2.0) == -4.0);        // pow binds tighter than neg
    CHECK(parse("(1 + x)^3")(1.0) == 8.0);
    CHECK(parse("x^-2")(2.0) == 0.25);
    CHECK(parse("x^(-2)")(2.0) == 0.25);
    CHECK(parse("x^(1+1)")(3.0) == 9.0);      // exponent folds to an integer
    CHECK(parse("1 - 2 - 3")(0.0) == -4.0);   // left associative
    CHECK(parse("8/4/2")(0.0) == 1.0);
}

TEST_CASE("functions") {
    CHECK(parse("exp(x)")(0.0) == 1.0);
    CHECK(parse("exp(x)")(1.0) == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
    CHECK(parse("sin(x)")(0.0) == 0.0);
    CHECK(parse("cos(x)")(0.0) == 1.0);
    CHECK(parse("log(exp(1))")(0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(parse("sqrt(x)")(4.0) == 2.0);
    CHECK(parse("exp(-x^2/2)")(0.0) == 1.0);
    CHECK(parse("sqrt(x^3)")(4.0) == 8.0);
}

TEST_CASE("division backtracks from the rational-literal lexer") {
    // "1/x" starts like a rational literal but the denominator is not a
    // digit string, so it must parse as Div(1, x).
    CHECK(parse("1/x")(2.0) == 0.5);
    CHECK(parse("x/2")(3.0) == 1.5);
}

TEST_CASE("exact-capable flag") {
    CHECK(parse("x^2 + 1/3").exact_capable());
    CHECK(parse("15/16*x").exact_capable());
    CHECK(parse("-(x - 1)*(x + 1)").exact_capable());
    CHECK_FALSE(parse("exp(x)").exact_capable());
    CHECK_FALSE(parse("x/2").exact_capable());   // div node, not a literal
    CHECK_FALSE(parse("x^-1").exact_capable());
    CHECK_FALSE(parse("sqrt(x)").exact_capable());
}

TEST_CASE("source round trip") {
    const std::string src = "1073741824/1539272109375*sqrt(sqrt((15/16*x + (-1))^26)) + 2";
    const ExpressionAst f = parse(src);
    CHECK(f.source() == src);
    const ExpressionAst g = parse(f.source());
    for (double t : {2.0, 2.5, 3.0, 4.5})
        CHECK(f(t) == g(t));  // same source, bit-identical values
}

TEST_CASE("parse errors carry a byte offset") {
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("x +"), ParseError);
    CHECK_THROWS_AS(parse("y"), ParseError);
    CHECK_THROWS_AS(parse("sin()"), ParseError);
    CHECK_THROWS_AS(parse("(x + 1"), ParseError);
    CHECK_THROWS_AS(parse("x + + x"), ParseError);
    CHECK_THROWS_AS(parse("x ^ x"), ParseError);
    CHECK_THROWS_AS(parse("x^(1/2)"), ParseError);  // fractional exponent
    CHECK_THROWS_AS(parse("x^2000"), ParseError);   // exponent cap
    CHECK_THROWS_AS(parse("2^3^1"), ParseError);    // pow does not chain
    try {
        parse("x + $");
    } catch (const ParseError& e) {
        CHECK(e.offset == 4);
    }
}

TEST_CASE("evaluation domain errors") {
    CHECK_THROWS_AS(parse("log(x)")(-1.0), DomainError);
    CHECK_THROWS_AS(parse("log(x)")(0.0), DomainError);
    CHECK_THROWS_AS(parse("1/x")(0.0), DomainError);
    CHECK_THROWS_AS(parse("sqrt(x)")(-4.0), DomainError);
    CHECK_THROWS_AS(parse("x^-1")(0.0), DomainError);
}

TEST_CASE("nodes store children before parents") {
    const ExpressionAst f = parse("sin(x)*exp(x) + 1/2");
    const auto& nodes = f.nodes();
    CHECK(f.root() == static_cast<std::int32_t>(nodes.size()) - 1);
    for (std::int32_t i = 0; i < static_cast<std::int32_t>(nodes.size()); ++i) {
        CHECK(nodes[i].lhs < i);
        CHECK(nodes[i].rhs < i);
    }
}
