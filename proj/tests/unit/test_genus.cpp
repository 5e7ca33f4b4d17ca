#include <doctest.h>

#include "qmf/errors.hpp"
#include "qmf/genus.hpp"
#include "qmf/modforms.hpp"
#include "qmf/wdvv.hpp"

using namespace qmf;

TEST_CASE("genus one from Getzler's relation matches -Ei2/12") {
    for (const char* orb : {"X2", "X3", "X4", "X6"}) {
        CAPTURE(orb);
        GetzlerResult g = genus1_getzler(orb, 20);
        QSeries closed = genus1_closed(orb, 20);
        CHECK(equal_common(g.value, closed).equal);
        CHECK(equal_upto(closed, eisenstein(2, 20).scaled(frac(-1, 12)), Rational(20)).equal);
        for (const auto& [name, form] : g.forms) {
            CAPTURE(name);
            CHECK(equal_common(form, closed).equal);
        }
    }
}

TEST_CASE("genus one polynomials evaluate to the closed form") {
    for (const char* orb : {"X2", "X3", "X4", "X6"}) {
        CAPTURE(orb);
        QuasiPoly p = genus1_poly(orb);
        CHECK(p.weight() == 2);
        CHECK(equal_upto(eval_rational(p, 30), genus1_closed(orb, 30), Rational(30)).equal);
    }
}

TEST_CASE("E derivative is -1/(2r)") {
    CHECK(genus1_E_derivative("X2") == frac(-1, 4));
    CHECK(genus1_E_derivative("X3") == frac(-1, 6));
    CHECK(genus1_E_derivative("X4") == frac(-1, 8));
    CHECK(genus1_E_derivative("X6") == frac(-1, 12));
}

TEST_CASE("elliptic curve genus one from the eta product") {
    const long n = 40;
    CHECK(equal_upto(genus1_elliptic_from_eta(n), genus1_closed("X1", n), Rational(n)).equal);
    CHECK(equal_upto(genus1_closed("X1", n), eisenstein(2, n).scaled(frac(-1, 24)), Rational(n)).equal);
}

TEST_CASE("genus two series and polynomial agree") {
    for (const char* orb : {"X2", "X3", "X4", "X6"}) {
        CAPTURE(orb);
        Genus2Result g = genus2_Ppsi2(orb, 25);
        CHECK(g.poly.weight() == 4);
        CHECK(equal_common(g.series, eval_rational(g.poly, 30)).equal);
    }
    CHECK_THROWS_AS(genus2_constant(5), UnsupportedOrbifold);
    CHECK_THROWS_AS(genus2_Ppsi2("X1", 10), UnsupportedOrbifold);
}

TEST_CASE("genus two formula on zero input is zero") {
    CHECK(genus2_formula(QSeries(1, 10, {}), 3).empty());
}
