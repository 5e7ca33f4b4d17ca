#include <doctest.h>

#include <random>

#include "qmf/errors.hpp"
#include "qmf/modforms.hpp"
#include "qmf/series.hpp"
#include "qmf/surd.hpp"

using namespace qmf;

namespace {

// Exact polynomial in Q.
QSeries poly(const std::vector<Rational>& c) {
    std::vector<QSeries::Term> t;
    for (size_t i = 0; i < c.size(); ++i) t.emplace_back(static_cast<long>(i), c[i]);
    return QSeries(1, QSeries::kExact, t);
}

QSeries random_series(std::mt19937& rng, long grid, long trunc) {
    std::uniform_int_distribution<int> coef(-9, 9), keep(0, 2);
    std::vector<QSeries::Term> t;
    for (long k = 0; k < trunc; ++k)
        if (keep(rng) == 0) t.emplace_back(k, frac(coef(rng), 1 + keep(rng)));
    return QSeries(grid, trunc, t);
}

}  // namespace

TEST_CASE("add cancels and has an identity") {
    QSeries s = poly({1, 1}) + poly({1, -1});
    CHECK(s == QSeries::constant(2));
    QSeries f(1, 5, {{0, 3}, {2, frac(1, 2)}});
    CHECK(add(QSeries(), f) == f);
}

TEST_CASE("add unifies grids and takes the shorter truncation") {
    QSeries a(2, 6, {{1, 1}});   // Q^(1/2) + O(Q^3)
    QSeries b(3, 6, {{1, 1}});   // Q^(1/3) + O(Q^2)
    QSeries s = a + b;
    CHECK(s.grid() == 6);
    CHECK(s.trunc_exponent() == 2);
    CHECK(s.coeff(frac(1, 2)) == 1);
    CHECK(s.coeff(frac(1, 3)) == 1);
}

TEST_CASE("canonical grid never coarsens past the truncation") {
    QSeries f(3, 1, {{0, 2}});  // 2 + O(Q^(1/3))
    CHECK(f.grid() == 3);
    CHECK(f.coeff(0) == 2);
    CHECK(QSeries(6, 4, {{2, 1}}).grid() == 3);  // Q^(1/3) + O(Q^(2/3))
    CHECK(QSeries(6, QSeries::kExact, {{2, 1}}).grid() == 3);
}

TEST_CASE("mul is the Cauchy product with the pessimistic truncation") {
    QSeries u = QSeries::monomial(1, 1, 24);
    QSeries p = (QSeries::constant(1) + u) * (QSeries::constant(1) - u);
    CHECK(p == QSeries::constant(1) - u * u);
    CHECK(QSeries::monomial(1, 1, 2) * QSeries::monomial(1, 1, 3) == QSeries::monomial(1, 5, 6));
    // trunc = min(T_a + v_b, T_b + v_a)
    QSeries a(1, 10, {{2, 1}});
    QSeries b(1, 5, {{0, 1}, {1, 1}});
    CHECK((a * b).trunc() == 7);
}

TEST_CASE("div inverts mul and rejects poles and zero divisors") {
    // Exact inputs need an explicit truncation before division.
    CHECK_THROWS_AS(div(poly({1, 0, -1}), poly({1, -1})), InsufficientTruncation);
    CHECK(equal_upto(div(poly({1, 0, -1}).truncate(8), poly({1, -1})), poly({1, 1}), Rational(8)).equal);
    QSeries geo = div(QSeries::constant(1), QSeries(1, 6, {{0, 1}, {1, -1}}));
    for (int k = 0; k < 6; ++k) CHECK(geo.coeff(Rational(k)) == 1);
    CHECK_THROWS_AS(div(QSeries::constant(1), QSeries(1, 6, {})), DivisionByZeroSeries);
    CHECK_THROWS_AS(div(QSeries::constant(1), QSeries::monomial(1, 1, 1)), NegativeValuation);
}

TEST_CASE("theta multiplies by the exponent") {
    CHECK(theta(QSeries::monomial(5, 3, 4)) == QSeries::monomial(frac(15, 4), 3, 4));
    CHECK(theta(QSeries::constant(7)).empty());
}

TEST_CASE("theta Ei2 = (Ei2^2 - Ei4)/12") {
    QSeries e2 = eisenstein(2, 50), e4 = eisenstein(4, 50);
    CHECK(equal_upto(theta(e2), (e2 * e2 - e4).scaled(frac(1, 12)), Rational(50)).equal);
}

TEST_CASE("substitute_power rescales exponents and truncation") {
    QSeries f(1, 4, {{1, 1}});
    QSeries g = substitute_power(f, 2, 1);
    CHECK(g.coeff(2) == 1);
    CHECK(g.trunc_exponent() == 8);
    QSeries h = substitute_power(f, 1, 3);
    CHECK(h.grid() == 3);
    CHECK(h.coeff(frac(1, 3)) == 1);
    CHECK(substitute_power(h, 3, 1) == f);
}

TEST_CASE("root inverts pow and rejects irrational leading coefficients") {
    QSeries u = QSeries::monomial(1, 1, 5);
    QSeries sq = (QSeries::constant(1) + u) * (QSeries::constant(1) + u);
    CHECK_THROWS_AS(root(sq, 2), InsufficientTruncation);
    CHECK(root(sq.truncate(6), 2) == (QSeries::constant(1) + u).truncate(6));
    CHECK_THROWS_AS(root(QSeries(1, 5, {{0, 2}, {1, 1}}), 2), IrrationalLeadingRoot);
    // Valuation not divisible by r on the stored grid: the grid is refined.
    QSeries q3 = root(QSeries(1, 6, {{1, 8}}), 3);
    CHECK(q3.coeff(frac(1, 3)) == 2);
}

TEST_CASE("equal_upto reports the first mismatch and refuses to extrapolate") {
    auto cmp = equal_upto(poly({1, 1}), poly({1, 2}), Rational(5));
    CHECK_FALSE(cmp.equal);
    REQUIRE(cmp.first_mismatch);
    CHECK(cmp.first_mismatch->exponent == 1);
    CHECK(cmp.first_mismatch->lhs == 1);
    CHECK(cmp.first_mismatch->rhs == 2);
    QSeries a(1, 3, {{0, 1}});
    CHECK_THROWS_AS(equal_upto(a, a, Rational(4)), InsufficientTruncation);
}

TEST_CASE("Jacobi identity theta3^4 = theta4^4 + theta2^4") {
    QSeries t2 = theta_const(2, 1, 31), t3 = theta_const(3, 1, 31),
            t4 = theta_const(4, 1, 31);
    CHECK(equal_upto(pow(t3, 4), pow(t4, 4) + pow(t2, 4), Rational(30)).equal);
}

TEST_CASE("JSON format is bit-exact and round-trips") {
    QSeries f(3, 7, {{1, frac(-2, 4)}, {4, 5}});
    CHECK(to_json(f) == R"({"grid_denominator":3,"trunc":7,"coeffs":[[1,"-1/2"],[4,"5/1"]]})");
    CHECK(series_from_json(to_json(f)) == f);
    CHECK(to_json(QSeries::constant(1)) == R"({"grid_denominator":1,"trunc":null,"coeffs":[[0,"1/1"]]})");
}

TEST_CASE("ring axioms and derivation rule on random series") {
    std::mt19937 rng(7);
    for (int i = 0; i < 100; ++i) {
        QSeries a = random_series(rng, 2, 12), b = random_series(rng, 3, 10), c = random_series(rng, 1, 8);
        CHECK(equal_common(a * b, b * a).equal);
        CHECK(equal_common((a * b) * c, a * (b * c)).equal);
        CHECK(equal_common(a * (b + c), a * b + a * c).equal);
        CHECK(equal_common(theta(a * b), theta(a) * b + a * theta(b)).equal);
    }
}

TEST_CASE("surd arithmetic") {
    Surd s = Surd::power(8, frac(1, 2));  // 2*2^(1/2)
    CHECK(s.coeff() == 2);
    CHECK(s.radical().to_string() == "2^(1/2)");
    CHECK((s * s).radical().is_one());
    CHECK((s * s).coeff() == 8);
    CHECK_THROWS_AS(Surd::power(-4, frac(1, 2)), IrrationalLeadingRoot);
}
