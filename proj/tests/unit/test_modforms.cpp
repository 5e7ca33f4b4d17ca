#include <doctest.h>

#include <map>

#include "qmf/errors.hpp"
#include "qmf/generator.hpp"
#include "qmf/modforms.hpp"

using namespace qmf;

namespace {

long sigma(long k, long n) {
    long s = 0;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0) {
            long p = 1;
            for (long i = 0; i < k; ++i) p *= d;
            s += p;
        }
    return s;
}

// Product over (1 - Q^n) multiplied out densely, no pentagonal shortcut.
std::vector<long> euler_product(long prec) {
    std::vector<long> c(prec, 0);
    c[0] = 1;
    for (long n = 1; n < prec; ++n)
        for (long k = prec - 1; k >= n; --k) c[k] -= c[k - n];
    return c;
}

}  // namespace

TEST_CASE("Eisenstein series agree with divisor sums") {
    const std::map<int, long> norm{{2, -24}, {4, 240}, {6, -504}};
    for (auto [k, c] : norm) {
        QSeries e = eisenstein(k, 40);
        CHECK(e.coeff(0) == 1);
        for (long n = 1; n < 40; ++n) CHECK(e.coeff(Rational(n)) == c * sigma(k - 1, n));
    }
}

TEST_CASE("Ei2 frozen leading coefficients") {
    QSeries e = eisenstein(2, 5);
    CHECK(e == QSeries::from_dense({1, -24, -72, -96, -168}));
}

TEST_CASE("eta is Q^(1/24) times the Euler product") {
    const long prec = 60;
    QSeries e = eta(prec);
    auto c = euler_product(prec);
    for (long n = 0; n + 1 < prec; ++n) CHECK(e.coeff(Rational(n) + frac(1, 24)) == c[n]);
    CHECK(e.coeff(frac(1, 24) + 5) == 1);  // pentagonal number 5
    CHECK(e.coeff(frac(1, 24) + 7) == 1);
    CHECK(e.coeff(frac(1, 24) + 3) == 0);
}

TEST_CASE("theta constants by direct summation") {
    const long prec = 30;
    QSeries t3 = theta_const(3, 1, prec), t4 = theta_const(4, 1, prec), t2 = theta_const(2, 1, prec);
    std::map<Rational, Rational> d3, d4, d2;
    for (long n = -10; n <= 10; ++n) {
        d3[Rational(n * n, 2)] += 1;
        d4[Rational(n * n, 2)] += (n % 2 == 0) ? 1 : -1;
        Rational h = Rational(2 * n + 1, 2);
        Rational e = h * h / 2;
        e.canonicalize();
        d2[e] += 1;
    }
    for (long k = 0; k < 2 * prec * 8; ++k) {
        Rational e = frac(k, 16);
        if (e >= prec) break;
        auto at = [&](const std::map<Rational, Rational>& d) {
            Rational ec = e;
            ec.canonicalize();
            auto it = d.find(ec);
            return it == d.end() ? Rational(0) : it->second;
        };
        CHECK(t3.coeff(e) == at(d3));
        CHECK(t4.coeff(e) == at(d4));
        CHECK(t2.coeff(e) == at(d2));
    }
    CHECK(t2.coeff(frac(1, 8)) == 2);
}

TEST_CASE("A2 lattice theta by brute force") {
    const long prec = 40;
    QSeries a2 = lattice_theta_a2(prec);
    std::vector<long> count(prec, 0);
    for (long m = -10; m <= 10; ++m)
        for (long n = -10; n <= 10; ++n) {
            long k = m * m + m * n + n * n;
            if (k < prec) ++count[k];
        }
    for (long k = 0; k < prec; ++k) CHECK(a2.coeff(Rational(k)) == count[k]);
    CHECK(a2.truncate(8) == QSeries::from_dense({1, 6, 0, 6, 6, 0, 0, 12}).truncate(8));
}

TEST_CASE("level 4 generator A is the square of theta3(Q^2)") {
    QSeries a = generator_series(GeneratorId::parse("A@4"), 9);
    CHECK(a == QSeries::from_dense({1, 4, 4, 0, 4, 8, 0, 0, 4}));
}

TEST_CASE("level 3 C starts 3 Q^(1/3)") {
    QSeries c = generator_series(GeneratorId::parse("C@3"), 4);
    CHECK(c.valuation_exponent() == frac(1, 3));
    CHECK(c.leading_coeff() == 3);
}

TEST_CASE("E generators start at 1 on every level") {
    for (const char* id : {"E@4", "E@3", "E@2", "E@1*"}) {
        CAPTURE(id);
        CHECK(generator_series(GeneratorId::parse(id), 3).coeff(0) == 1);
    }
}

TEST_CASE("A^r = B^r + C^r on every level") {
    const long prec = 30;
    for (const char* lvl : {"4", "3", "2", "1*"}) {
        CAPTURE(lvl);
        LevelInfo info = level_info(std::string(lvl) == "1*" ? 1 : std::stoi(lvl));
        auto g = [&](const char* k) { return generator(GeneratorId::parse(std::string(k) + "@" + lvl), prec); };
        RadSeries res = sub(pow(g("A"), info.r), add(pow(g("B"), info.r), pow(g("C"), info.r)));
        for (const auto& [rad, part] : res.parts()) CHECK(part.truncate(Rational(prec - 1)).empty());
    }
}

TEST_CASE("irrational scales are kept apart from the rational series") {
    GeneratorId c2 = GeneratorId::parse("C@2");
    CHECK_FALSE(generator_scale(c2).radical().is_one());
    CHECK_THROWS_AS(generator_series(c2, 5), IrrationalSeries);
    CHECK(generator_normalized(c2, 5).leading_coeff() == 1);
}

TEST_CASE("generator ids parse and print canonically") {
    CHECK(GeneratorId::parse("C@4(Q^2)").to_string() == "C@4(Q^2)");
    CHECK(GeneratorId::parse("theta{1/6,0}(Q^3)").arg == 3);
    CHECK(GeneratorId::parse("A@3").doubled_weight() == 2);
    CHECK_THROWS_AS(GeneratorId::parse("A@5"), Error);
    CHECK_THROWS_AS(GeneratorId::parse("nonsense"), ParseError);
}

TEST_CASE("E on level 1* is Ei2") {
    CHECK(generator_series(GeneratorId::parse("E@1*"), 40) == eisenstein(2, 40));
}
