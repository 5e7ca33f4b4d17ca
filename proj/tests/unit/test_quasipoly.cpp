#include <doctest.h>

#include "qmf/errors.hpp"
#include "qmf/expr.hpp"
#include "qmf/modforms.hpp"
#include "qmf/quasipoly.hpp"

using namespace qmf;

TEST_CASE("expression parser precedence and theta binding") {
    CHECK(to_string(parse_expr("1 + 2*3^2")) == to_string(parse_expr("1 + (2*(3^2))")));
    auto e = parse_expr("theta_q X * Y");
    CHECK(e->op == Expr::Op::Mul);
    CHECK(e->args[0]->op == Expr::Op::Theta);
    CHECK(max_theta_order(parse_expr("theta_q^2 X")) == 2);
    CHECK(names_in(parse_expr("A@1* * B@1* + X6.Z4")) == std::set<std::string>{"A@1*", "B@1*", "X6.Z4"});
    CHECK_THROWS_AS(parse_expr("1 +"), ParseError);
    CHECK_THROWS_AS(parse_expr("(X"), ParseError);
    CHECK_THROWS_AS(parse_equation("X + Y"), ParseError);
}

TEST_CASE("eval_series handles division, roots and theta scaling") {
    auto resolve = [](const std::string& s) -> RadSeries {
        if (s == "f") return QSeries(1, 20, {{0, 1}, {1, 1}});
        throw EvaluationError(s);
    };
    QSeries one = eval_series(parse_expr("f / f"), resolve).rational();
    CHECK(equal_upto(one, QSeries::constant(1), Rational(19)).equal);
    QSeries th = eval_series(parse_expr("theta_q f"), resolve, 3).rational();
    CHECK(th.coeff(1) == 3);
    RadSeries sq = eval_series(parse_expr("2^(1/2) * 2^(1/2)"), resolve);
    CHECK(sq.rational() == QSeries::constant(2));
}

TEST_CASE("weights of generators and homogeneity") {
    CHECK(QuasiPoly::parse("Ei2^2 - Ei4").weight() == 4);
    CHECK(QuasiPoly::parse("A@4 * C@4").weight() == 2);
    CHECK(QuasiPoly::parse("theta2^2").weight() == 1);
    CHECK(QuasiPoly::parse("eta").weight() == frac(1, 2));
    CHECK_THROWS_AS(QuasiPoly::parse("Ei2 + Ei4").weight(), InhomogeneousPolynomial);
}

TEST_CASE("partial_E differentiates along the E-type generator") {
    QuasiPoly p = QuasiPoly::parse("3*E@3^2*A@3 + A@3^3");
    CHECK(p.partial_E() == QuasiPoly::parse("6*E@3*A@3"));
    CHECK(QuasiPoly::parse("A@4^2").partial_E().is_zero());
    CHECK_THROWS_AS(QuasiPoly::parse("Ei2*E@4").partial_E(), MixedEGenerators);
}

TEST_CASE("ring operations and surd coefficients stay exact") {
    QuasiPoly a = QuasiPoly::parse("2^(1/2)*C@2"), b = QuasiPoly::parse("2^(1/2)*A@2");
    QuasiPoly p = mul(a, b);
    CHECK(p == QuasiPoly::parse("2*A@2*C@2"));
    CHECK(sub(p, p).is_zero());
    CHECK(pow(QuasiPoly::parse("A@4 + 1"), 2) == QuasiPoly::parse("A@4^2 + 2*A@4 + 1"));
}

TEST_CASE("round trip through text and evaluation") {
    for (const char* text : {"-1/12*Ei2", "A@3^2 - 3*B@3*C@3", "1/2*Ei4 + 7/3*Ei2^2", "2^(1/2)*A@2*C@2"}) {
        CAPTURE(text);
        QuasiPoly p = QuasiPoly::parse(text);
        CHECK(QuasiPoly::parse(p.to_string()) == p);
    }
    QSeries v = eval_rational(QuasiPoly::parse("Ei2^2 - Ei4"), 30);
    QSeries w = theta(eisenstein(2, 30)).scaled(12);
    CHECK(equal_upto(v, w, Rational(30)).equal);
}

TEST_CASE("polynomial subset rejects series-only constructs") {
    CHECK_THROWS_AS(QuasiPoly::parse("theta_q Ei2"), EvaluationError);
    CHECK_THROWS_AS(QuasiPoly::parse("1/Ei2"), EvaluationError);
    CHECK_THROWS_AS(QuasiPoly::parse("Ei2^(1/2)"), EvaluationError);
    CHECK_THROWS_AS(QuasiPoly::symbol("X").weight(), EvaluationError);
}
