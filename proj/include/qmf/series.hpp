#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmf/rational.hpp"

namespace qmf {

// Truncated series sum_k c_k Q^{k/D}. Exponents are stored as grid indices k;
// every index below `trunc` is known exactly, nothing at or above it is
// claimed. An infinite trunc marks an exact (polynomial) value.
class QSeries {
public:
    using Term = std::pair<long, Rational>;
    static constexpr long kExact = std::numeric_limits<long>::max();

    QSeries() = default;  // exact zero on grid 1

    // Terms need not be sorted; zeros and indices >= trunc are dropped.
    QSeries(long grid, long trunc, std::vector<Term> terms);

    static QSeries constant(const Rational& c);
    static QSeries monomial(const Rational& c, long k, long grid);
    // Dense coefficients for Q^0..Q^{n-1} on grid 1, trunc n.
    static QSeries from_dense(const std::vector<Rational>& coeffs);

    long grid() const noexcept { return grid_; }
    long trunc() const noexcept { return trunc_; }
    bool exact() const noexcept { return trunc_ == kExact; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    bool empty() const noexcept { return terms_.empty(); }

    // Smallest stored index, or trunc if nothing is stored.
    long valuation() const noexcept;
    // Truncation as an exponent of Q (meaningless when exact()).
    Rational trunc_exponent() const;
    Rational valuation_exponent() const;
    // Coefficient of Q^e; throws InsufficientTruncation beyond trunc.
    Rational coeff(const Rational& exponent) const;
    Rational leading_coeff() const;

    // Same series on a finer grid (new_grid must be a multiple of grid()).
    QSeries regrid(long new_grid) const;
    // Drop every exponent >= e (no-op if already shorter).
    QSeries truncate(const Rational& exponent) const;

    QSeries operator-() const;
    QSeries scaled(const Rational& c) const;

    bool operator==(const QSeries&) const = default;

private:
    void canonicalize();

    long grid_ = 1;
    long trunc_ = kExact;
    std::vector<Term> terms_;

    friend QSeries add(const QSeries&, const QSeries&);
    friend QSeries mul(const QSeries&, const QSeries&);
    friend QSeries div(const QSeries&, const QSeries&);
    friend QSeries theta(const QSeries&);
    friend QSeries substitute_power(const QSeries&, long, long);
    friend QSeries root(const QSeries&, long);
};

QSeries add(const QSeries& a, const QSeries& b);
QSeries sub(const QSeries& a, const QSeries& b);
QSeries mul(const QSeries& a, const QSeries& b);
// Throws DivisionByZeroSeries, NegativeValuation.
QSeries div(const QSeries& a, const QSeries& b);
QSeries pow(const QSeries& a, long n);
// theta = Q d/dQ.
QSeries theta(const QSeries& f);
// f(Q) -> f(Q^{num/den}).
QSeries substitute_power(const QSeries& f, long num, long den);
// g with g^r = f, positive leading coefficient for even r.
QSeries root(const QSeries& f, long r);
// f^{p/q} = root(f, q)^p; negative p divides.
QSeries rational_pow(const QSeries& f, const Rational& exponent);

inline QSeries operator+(const QSeries& a, const QSeries& b) { return add(a, b); }
inline QSeries operator-(const QSeries& a, const QSeries& b) { return sub(a, b); }
inline QSeries operator*(const QSeries& a, const QSeries& b) { return mul(a, b); }
inline QSeries operator/(const QSeries& a, const QSeries& b) { return div(a, b); }
inline QSeries operator*(const Rational& c, const QSeries& a) { return a.scaled(c); }

struct Mismatch {
    Rational exponent;
    Rational lhs;
    Rational rhs;
};

struct Comparison {
    bool equal = true;
    std::optional<Mismatch> first_mismatch;
};

// Compares every coefficient at exponents < order. Throws InsufficientTruncation.
Comparison equal_upto(const QSeries& a, const QSeries& b, const Rational& order);
// Compares up to the shorter of the two truncations.
Comparison equal_common(const QSeries& a, const QSeries& b);
Rational common_trunc(const QSeries& a, const QSeries& b);

std::string to_json(const QSeries& f);
QSeries series_from_json(const std::string& text);
// "1 - 24*Q + O(Q^2)"; exponents as Q^(1/3) when fractional.
std::string to_text(const QSeries& f, const std::string& var = "Q");
std::string format_exponent(const Rational& e);

}  // namespace qmf
