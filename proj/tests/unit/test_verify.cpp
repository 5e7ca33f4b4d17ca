#include <doctest.h>

#include <json.hpp>

#include "qmf/errors.hpp"
#include "qmf/verify.hpp"

using namespace qmf;

TEST_CASE("suite report JSON shape") {
    SuiteReport rep = run_suite("ramanujan", 20);
    auto j = nlohmann::json::parse(rep.to_json());
    CHECK(j["suite"] == "ramanujan");
    CHECK(j["trunc"] == 20);
    REQUIRE(j["checks"].is_array());
    REQUIRE_FALSE(j["checks"].empty());
    for (const auto& c : j["checks"]) {
        CHECK(c.contains("id"));
        CHECK(c.contains("paper_ref"));
        CHECK(c.contains("detail"));
        CHECK((c["status"] == "pass" || c["status"] == "fail"));
    }
    CHECK(rep.all_pass());
    CHECK(std::is_sorted(rep.checks.begin(), rep.checks.end(),
                         [](const Check& a, const Check& b) { return a.id < b.id; }));
}

TEST_CASE("unknown suite") {
    CHECK_THROWS_AS(run_suite("nope"), UnknownSuite);
    CHECK_THROWS_AS(default_trunc("nope"), UnknownSuite);
    CHECK_THROWS_AS(identity_table("nope"), UnknownSuite);
}

TEST_CASE("integrality check") {
    QSeries f(1, 5, {{0, 1}, {2, frac(1, 3)}});
    CHECK(integrality_check(f, 3).integral);
    IntegralityResult r = integrality_check(f, 2);
    CHECK_FALSE(r.integral);
    CHECK(*r.exponent == 2);
    CHECK(r.coefficient == frac(2, 3));
}

TEST_CASE("identity checks report the first residual term") {
    Identity good{"ok", "test", "Ei2^2 - Ei4 = 12*theta_q Ei2", parse_equation("Ei2^2 - Ei4 = 12*theta_q Ei2")};
    CHECK(check_identity(good, 20).pass);
    Identity bad{"bad", "test", "Ei4 = Ei2^2", parse_equation("Ei4 = Ei2^2")};
    Check c = check_identity(bad, 20);
    CHECK_FALSE(c.pass);
    CHECK(c.detail.find("residual starts") != std::string::npos);
}

TEST_CASE("bundled identity tables parse") {
    for (const char* name : {"isogeny", "theta", "cross"}) {
        CAPTURE(name);
        CHECK_FALSE(identity_table(name).empty());
    }
}

TEST_CASE("every suite has a default order") {
    for (const auto& s : suite_names()) CHECK(default_trunc(s) >= 0);
}
