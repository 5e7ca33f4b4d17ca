#include "qmf/surd.hpp"

#include "qmf/errors.hpp"

namespace qmf {

namespace {

// Prime factorization by trial division; refuses numbers with a large cofactor.
std::vector<std::pair<long, long>> factorize(mpz_class n) {
    std::vector<std::pair<long, long>> out;
    for (long p = 2; p <= 1000000 && n > 1; ++p) {
        if (mpz_class(p) * p > n) break;
        long k = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p))) {
            n /= p;
            ++k;
        }
        if (k > 0) out.emplace_back(p, k);
    }
    if (n > 1) {
        if (!n.fits_slong_p()) throw IrrationalLeadingRoot("cannot factor " + n.get_str() + " to form a radical");
        out.emplace_back(n.get_si(), 1);
    }
    return out;
}

Rational int_power(long p, long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e < 0 ? -e : e));
    return e < 0 ? Rational(1, r) : Rational(r);
}

Rational rational_int_power(const Rational& x, long e) {
    mpz_class n, d;
    unsigned long ue = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(n.get_mpz_t(), x.get_num_mpz_t(), ue);
    mpz_pow_ui(d.get_mpz_t(), x.get_den_mpz_t(), ue);
    Rational r(n, d);
    r.canonicalize();
    return e < 0 ? Rational(1 / r) : r;
}

}  // namespace

std::string Radical::to_string() const {
    std::string out;
    for (const auto& [p, e] : factors_) {
        if (!out.empty()) out += "*";
        out += std::to_string(p) + "^(" + e.get_str() + ")";
    }
    return out.empty() ? "1" : out;
}

Surd Surd::power(const Rational& x, const Rational& e) {
    if (sgn(x) == 0) {
        if (sgn(e) <= 0) throw DivisionByZeroSeries("zero raised to a non-positive power");
        return Surd(0);
    }
    if (is_integer(e)) return Surd(rational_int_power(x, e.get_num().get_si()));
    Rational sign = 1;
    if (sgn(x) < 0) {
        if (e.get_den() % 2 == 0) throw IrrationalLeadingRoot("even root of negative " + to_plain(x));
        if (e.get_num() % 2 != 0) sign = -1;
    }
    std::map<long, Rational> exps;
    for (auto [p, k] : factorize(abs(x.get_num()))) exps[p] += e * k;
    for (auto [p, k] : factorize(x.get_den())) exps[p] -= e * k;
    Surd out(sign);
    for (const auto& [p, ex] : exps) {
        Rational fl = floor_of(ex);
        out.coeff_ *= int_power(p, fl.get_num().get_si());
        Rational frac = ex - fl;
        if (sgn(frac) != 0) out.radical_.factors_.emplace_back(p, frac);
    }
    return out;
}

Surd Surd::operator*(const Surd& o) const {
    Surd out(coeff_ * o.coeff_);
    std::map<long, Rational> exps;
    for (const auto& [p, e] : radical_.factors_) exps[p] += e;
    for (const auto& [p, e] : o.radical_.factors_) exps[p] += e;
    for (const auto& [p, e] : exps) {
        Rational f = e;
        if (f >= 1) {
            f -= 1;
            out.coeff_ *= p;
        }
        if (sgn(f) != 0) out.radical_.factors_.emplace_back(p, f);
    }
    return out;
}

Surd Surd::inverse() const {
    if (sgn(coeff_) == 0) throw DivisionByZeroSeries("inverse of zero surd");
    Surd out(1 / coeff_);
    for (const auto& [p, e] : radical_.factors_) {
        out.coeff_ /= p;
        out.radical_.factors_.emplace_back(p, 1 - e);
    }
    return out;
}

Surd Surd::pow(const Rational& e) const {
    Surd out = power(coeff_, e);
    for (const auto& [p, f] : radical_.factors_) out = out * power(Rational(p), f * e);
    return out;
}

std::string Surd::to_string() const {
    if (radical_.is_one()) return to_plain(coeff_);
    return to_plain(coeff_) + "*" + radical_.to_string();
}

RadSeries::RadSeries(QSeries rational_part) { parts_.emplace(Radical(), std::move(rational_part)); }

RadSeries::RadSeries(const Surd& scale, const QSeries& f) { parts_.emplace(scale.radical(), f.scaled(scale.coeff())); }

std::pair<Radical, QSeries> RadSeries::single() const {
    if (parts_.empty()) return {Radical(), QSeries()};
    if (parts_.size() == 1) return *parts_.begin();
    const std::pair<const Radical, QSeries>* live = nullptr;
    for (const auto& kv : parts_) {
        if (kv.second.empty()) continue;
        if (live) throw UnsupportedCombination("expression mixes radical classes " + live->first.to_string() + " and " +
                                               kv.first.to_string());
        live = &kv;
    }
    if (!live) live = &*parts_.begin();
    QSeries f = live->second;
    for (const auto& kv : parts_)
        if (!kv.second.exact()) f = f.truncate(kv.second.trunc_exponent());
    return {live->first, f};
}

QSeries RadSeries::rational() const {
    QSeries out;
    bool have = false;
    for (const auto& [rad, f] : parts_) {
        if (rad.is_one()) {
            out = have ? add(out, f) : f;
            have = true;
            continue;
        }
        if (!f.empty())
            throw IrrationalSeries("component with radical " + rad.to_string() + " is nonzero at Q^" +
                                   to_plain(f.valuation_exponent()));
    }
    for (const auto& [rad, f] : parts_)
        if (!rad.is_one() && !f.exact()) out = out.truncate(f.trunc_exponent());
    // A series vanishing only to a finite order keeps that order.
    if (!have) {
        for (const auto& [rad, f] : parts_)
            if (!f.exact()) return QSeries(f.grid(), f.trunc(), {});
    }
    return out;
}

RadSeries RadSeries::operator-() const {
    RadSeries out = *this;
    for (auto& [rad, f] : out.parts_) f = -f;
    return out;
}

RadSeries RadSeries::scaled(const Surd& s) const {
    RadSeries out;
    for (const auto& [rad, f] : parts_) {
        Surd prod = s * Surd(1, rad);
        out = add(out, RadSeries(prod, f));
    }
    return out;
}

RadSeries add(const RadSeries& a, const RadSeries& b) {
    RadSeries out = a;
    for (const auto& [rad, f] : b.parts_) {
        auto it = out.parts_.find(rad);
        if (it == out.parts_.end())
            out.parts_.emplace(rad, f);
        else
            it->second = add(it->second, f);
    }
    return out;
}

RadSeries sub(const RadSeries& a, const RadSeries& b) { return add(a, -b); }

RadSeries mul(const RadSeries& a, const RadSeries& b) {
    RadSeries out;
    for (const auto& [ra, fa] : a.parts_)
        for (const auto& [rb, fb] : b.parts_) {
            Surd s = Surd(1, ra) * Surd(1, rb);
            out = add(out, RadSeries(s, mul(fa, fb)));
        }
    return out;
}

RadSeries div(const RadSeries& a, const RadSeries& b) {
    auto [rb, fb] = b.single();
    Surd inv = Surd(1, rb).inverse();
    RadSeries out;
    for (const auto& [ra, fa] : a.parts()) out = add(out, RadSeries(Surd(1, ra) * inv, div(fa, fb)));
    return out;
}

RadSeries pow(const RadSeries& a, long n) {
    if (n < 0) return div(RadSeries(QSeries::constant(1)), pow(a, -n));
    RadSeries result(QSeries::constant(1)), base = a;
    while (n > 0) {
        if (n & 1) result = mul(result, base);
        n >>= 1;
        if (n > 0) base = mul(base, base);
    }
    return result;
}

RadSeries rational_pow(const RadSeries& a, const Rational& e) {
    if (is_integer(e)) return pow(a, e.get_num().get_si());
    auto [rad, f] = a.single();
    if (f.empty()) throw DivisionByZeroSeries("fractional power of a series vanishing to its truncation");
    Rational lead = f.leading_coeff();
    Surd scale = Surd(1, rad).pow(e) * Surd::power(lead, e);
    return RadSeries(scale, rational_pow(f.scaled(1 / lead), e));
}

RadSeries theta(const RadSeries& f) {
    RadSeries out;
    for (const auto& [rad, s] : f.parts_) out.parts_.emplace(rad, theta(s));
    return out;
}

RadSeries substitute_power(const RadSeries& f, long num, long den) {
    RadSeries out;
    for (const auto& [rad, s] : f.parts_) out.parts_.emplace(rad, substitute_power(s, num, den));
    return out;
}

}  // namespace qmf
