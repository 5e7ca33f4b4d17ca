#pragma once

#include <map>
#include <string>
#include <vector>

#include "qmf/series.hpp"

namespace qmf {

// prod p^{e_p} with primes ascending and every e_p strictly inside (0,1).
// The empty radical is 1.
class Radical {
public:
    Radical() = default;
    bool is_one() const noexcept { return factors_.empty(); }
    const std::vector<std::pair<long, Rational>>& factors() const noexcept { return factors_; }
    std::string to_string() const;  // "2^(1/2)*3^(1/3)"

    bool operator==(const Radical& o) const { return factors_ == o.factors_; }
    bool operator<(const Radical& o) const { return factors_ < o.factors_; }

private:
    std::vector<std::pair<long, Rational>> factors_;
    friend class Surd;
};

// rational * radical.
class Surd {
public:
    Surd(Rational c = 0) : coeff_(std::move(c)) {}  // NOLINT(google-explicit-constructor)
    Surd(Rational c, Radical r) : coeff_(std::move(c)), radical_(std::move(r)) {}
    const Rational& coeff() const noexcept { return coeff_; }
    const Radical& radical() const noexcept { return radical_; }

    // x^e for rational x and e; throws IrrationalLeadingRoot for even roots of
    // negatives or numbers it cannot factor.
    static Surd power(const Rational& x, const Rational& e);

    Surd operator*(const Surd& o) const;
    Surd inverse() const;
    Surd pow(const Rational& e) const;
    std::string to_string() const;

private:
    Rational coeff_;
    Radical radical_;
};

// A sum over radical classes of rational series: sum_R R * f_R. Every class
// that ever appeared is kept (possibly empty) so the overall truncation stays
// pessimistic.
class RadSeries {
public:
    RadSeries() = default;
    RadSeries(QSeries rational_part);  // NOLINT(google-explicit-constructor)
    RadSeries(const Surd& scale, const QSeries& f);

    const std::map<Radical, QSeries>& parts() const noexcept { return parts_; }
    // The single class when there is exactly one; throws otherwise.
    std::pair<Radical, QSeries> single() const;
    // Rational series, or IrrationalSeries if some irrational class is nonzero.
    QSeries rational() const;

    RadSeries operator-() const;
    RadSeries scaled(const Surd& s) const;

private:
    std::map<Radical, QSeries> parts_;
    friend RadSeries add(const RadSeries&, const RadSeries&);
    friend RadSeries mul(const RadSeries&, const RadSeries&);
    friend RadSeries theta(const RadSeries&);
    friend RadSeries substitute_power(const RadSeries&, long, long);
};

RadSeries add(const RadSeries& a, const RadSeries& b);
RadSeries sub(const RadSeries& a, const RadSeries& b);
RadSeries mul(const RadSeries& a, const RadSeries& b);
// Divisor must be a single radical class.
RadSeries div(const RadSeries& a, const RadSeries& b);
RadSeries pow(const RadSeries& a, long n);
// Single-class base only; the leading coefficient's root may be irrational.
RadSeries rational_pow(const RadSeries& a, const Rational& e);
RadSeries theta(const RadSeries& f);
RadSeries substitute_power(const RadSeries& f, long num, long den);

}  // namespace qmf
