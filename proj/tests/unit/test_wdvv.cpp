#include <doctest.h>

#include <string>

#include "qmf/errors.hpp"
#include "qmf/wdvv.hpp"

using namespace qmf;

namespace {

bool all_pass(const std::vector<CheckResult>& rs) {
    for (const auto& r : rs)
        if (!r.pass) return false;
    return true;
}

}  // namespace

TEST_CASE("X2 invariants") {
    CHECK(gw_invariant("X2", "X", 0) == 0);
    CHECK(gw_invariant("X2", "X", 1) == 1);
    CHECK(gw_invariant("X2", "X", 2) == 0);
    CHECK(gw_invariant("X2", "X", 3) == 4);
    CHECK(gw_invariant("X2", "Y", 0) == frac(-1, 4));
    CHECK(gw_invariant("X2", "Z", 2) == 2);
}

TEST_CASE("orbifold registry") {
    CHECK(orbifold_tags() == std::vector<std::string>{"X1", "X2", "X3", "X4", "X6"});
    CHECK(orbifold("X3").r == 3);
    CHECK_THROWS_AS(orbifold("X5"), UnsupportedOrbifold);
    CHECK_THROWS_AS(orbifold("X2").correlator("nope"), UnknownCorrelator);
    const Orbifold& x2 = orbifold("X2");
    for (const auto& c : x2.correlators) CHECK(c.closed_form.weight() == c.expected_weight());
}

TEST_CASE("insertion lookup respects the degree axiom and symmetry") {
    const Orbifold& x6 = orbifold("X6");
    CHECK(find_by_insertions(x6, parse_insertions("<x,x,x^4>")).has_value());
    CHECK(insertions_text(parse_insertions("x,x^3,z")) == "<x,x^3,z>");
    for (const char* bad : {"<x,", "<x", "x^", "x^2y", "<>", "<x,,y>"}) CHECK_THROWS_AS(parse_insertions(bad), ParseError);
}

TEST_CASE("solver reproduces the closed forms from the seeds") {
    for (const char* orb : {"X2", "X3", "X4", "X6"}) {
        CAPTURE(orb);
        OdeSystem sys = builtin_system(orb, "minimal");
        std::map<std::string, QSeries> given;
        for (const auto& g : sys.given) given[g] = closed_form_series(orb, g, 30);
        auto solved = solve_ode(sys, 30, given);
        for (const auto& u : sys.unknowns) {
            CAPTURE(u);
            CHECK(equal_upto(solved.at(u), closed_form_series(orb, u, 30), Rational(30)).equal);
        }
    }
}

TEST_CASE("X2 minimal system verifies") {
    CHECK(all_pass(verify_system("X2", "minimal", 40)));
    CHECK(all_pass(verify_system("X2", "full", 40)));
}

TEST_CASE("a perturbed equation leaves a nonzero residual") {
    std::string text = data_file("system_X2.txt");
    auto at = text.find("4*X^2 - 4*Z^2");
    REQUIRE(at != std::string::npos);
    text.replace(at, 13, "4*X^2 - 5*Z^2");
    OdeSystem sys = parse_system(text);
    CHECK_FALSE(all_pass(verify_system(sys, "minimal", 20)));
}

TEST_CASE("resonant order without a seed is reported") {
    OdeSystem sys = parse_system("orbifold X2\nunknowns u\nseed u = O(q)\nsolve e: theta_q u = u\n");
    try {
        solve_ode(sys, 5);
        FAIL("expected ResonantOrder");
    } catch (const ResonantOrder& e) {
        CHECK(e.order() == 1);
    }
}

TEST_CASE("an inconsistent seed is reported") {
    OdeSystem sys = parse_system("orbifold X2\nunknowns u\nseed u = 1 + q + O(q^2)\nsolve e: theta_q u = 0\n");
    CHECK_THROWS_AS(solve_ode(sys, 5), SeedInconsistency);
}

TEST_CASE("a constant solution") {
    OdeSystem sys = parse_system("orbifold X2\nunknowns u\nseed u = 3 + O(q)\nsolve e: theta_q u = 0\n");
    auto s = solve_ode(sys, 10);
    CHECK(equal_upto(s.at("u"), QSeries::constant(3), Rational(10)).equal);
}

TEST_CASE("correlators forced to vanish") {
    CHECK(closed_form_series("X6", "Z27", 40).truncate(40).empty());
    CHECK(closed_form_series("X4", "W", 40).truncate(40).empty());
}

TEST_CASE("system file errors") {
    CHECK_THROWS_AS(parse_system("unknowns X\nsolve: theta_q X = \n"), ParseError);
    CHECK_THROWS_AS(builtin_system("X5"), UnsupportedOrbifold);
}
