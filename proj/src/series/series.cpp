#include "qmf/series.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "qmf/errors.hpp"

namespace qmf {

namespace {

constexpr long kExact = QSeries::kExact;

long sat_add(long a, long b) {
    if (a == kExact || b == kExact) return kExact;
    long out;
    if (__builtin_add_overflow(a, b, &out)) throw Error("Overflow", "truncation index overflow");
    return out;
}

long sat_mul(long a, long f) {
    if (a == kExact) return kExact;
    long out;
    if (__builtin_mul_overflow(a, f, &out)) throw Error("Overflow", "grid index overflow");
    return out;
}

long lcm_of(long a, long b) { return std::lcm(a, b); }

// Exact r-th root of a rational, or nullopt.
std::optional<Rational> exact_root(const Rational& c, long r) {
    if (r == 1) return c;
    bool negative = sgn(c) < 0;
    if (negative && r % 2 == 0) return std::nullopt;
    mpz_class num = abs(c.get_num());
    mpz_class den = c.get_den();
    mpz_class rn, rd;
    if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(r))) return std::nullopt;
    if (!mpz_root(rd.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(r))) return std::nullopt;
    Rational out(negative ? mpz_class(-rn) : rn, rd);
    out.canonicalize();
    return out;
}

// Dense scratch indexed from `base`.
struct Dense {
    long base;
    std::vector<Rational> v;
    Dense(long lo, long hi) : base(lo), v(static_cast<size_t>(std::max(0L, hi - lo))) {}
    Rational& at(long k) { return v[static_cast<size_t>(k - base)]; }
    std::vector<QSeries::Term> terms() const {
        std::vector<QSeries::Term> out;
        for (size_t i = 0; i < v.size(); ++i)
            if (sgn(v[i]) != 0) out.emplace_back(base + static_cast<long>(i), v[i]);
        return out;
    }
};

}  // namespace

QSeries::QSeries(long grid, long trunc, std::vector<Term> terms)
    : grid_(grid), trunc_(trunc), terms_(std::move(terms)) {
    if (grid_ <= 0) throw Error("InvalidSeries", "grid denominator must be positive");
    canonicalize();
}

QSeries QSeries::constant(const Rational& c) { return QSeries(1, kExact, {{0, c}}); }

QSeries QSeries::monomial(const Rational& c, long k, long grid) { return QSeries(grid, kExact, {{k, c}}); }

QSeries QSeries::from_dense(const std::vector<Rational>& coeffs) {
    std::vector<Term> t;
    for (size_t i = 0; i < coeffs.size(); ++i) t.emplace_back(static_cast<long>(i), coeffs[i]);
    return QSeries(1, static_cast<long>(coeffs.size()), std::move(t));
}

void QSeries::canonicalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
    std::vector<Term> merged;
    for (auto& t : terms_) {
        if (t.first >= trunc_) break;
        if (!merged.empty() && merged.back().first == t.first)
            merged.back().second += t.second;
        else
            merged.push_back(std::move(t));
    }
    std::erase_if(merged, [](const Term& t) { return sgn(t.second) == 0; });
    if (!merged.empty() && merged.front().first < 0)
        throw NegativeValuation("series has a negative exponent");
    terms_ = std::move(merged);
    // The truncation takes part in the gcd: coarsening past it would have to
    // round it down and forget known coefficients.
    long g = trunc_ == kExact ? grid_ : std::gcd(grid_, trunc_);
    for (const auto& t : terms_) g = std::gcd(g, t.first);
    if (g > 1) {
        grid_ /= g;
        for (auto& t : terms_) t.first /= g;
        if (trunc_ != kExact) trunc_ /= g;
    }
}

long QSeries::valuation() const noexcept { return terms_.empty() ? trunc_ : terms_.front().first; }

Rational QSeries::trunc_exponent() const {
    if (exact()) throw InsufficientTruncation("exact series has no finite truncation");
    return frac(trunc_, grid_);
}

Rational QSeries::valuation_exponent() const {
    if (terms_.empty()) return exact() ? Rational(0) : trunc_exponent();
    return frac(terms_.front().first, grid_);
}

Rational QSeries::coeff(const Rational& exponent) const {
    if (!exact() && exponent >= trunc_exponent())
        throw InsufficientTruncation("coefficient at Q^" + to_plain(exponent) + " beyond truncation Q^" +
                                     to_plain(trunc_exponent()));
    Rational scaled = exponent * grid_;
    if (!is_integer(scaled)) return 0;
    long k = scaled.get_num().get_si();
    auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                               [](const Term& t, long key) { return t.first < key; });
    return (it != terms_.end() && it->first == k) ? it->second : Rational(0);
}

Rational QSeries::leading_coeff() const { return terms_.empty() ? Rational(0) : terms_.front().second; }

QSeries QSeries::regrid(long new_grid) const {
    if (new_grid % grid_ != 0) throw Error("InvalidSeries", "regrid target is not a multiple of the grid");
    long f = new_grid / grid_;
    QSeries out;
    out.grid_ = new_grid;
    out.trunc_ = sat_mul(trunc_, f);
    out.terms_ = terms_;
    for (auto& t : out.terms_) t.first *= f;
    return out;  // deliberately not canonicalized
}

QSeries QSeries::truncate(const Rational& exponent) const {
    Rational scaled = exponent * grid_;
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    long t = c.fits_slong_p() ? c.get_si() : kExact;
    return QSeries(grid_, std::min(trunc_, std::max(0L, t)), terms_);
}

QSeries QSeries::operator-() const { return scaled(-1); }

QSeries QSeries::scaled(const Rational& c) const {
    std::vector<Term> t = terms_;
    for (auto& x : t) x.second *= c;
    return QSeries(grid_, trunc_, std::move(t));
}

QSeries add(const QSeries& a, const QSeries& b) {
    long g = lcm_of(a.grid_, b.grid_);
    QSeries x = a.regrid(g), y = b.regrid(g);
    std::vector<QSeries::Term> t = std::move(x.terms_);
    t.insert(t.end(), y.terms_.begin(), y.terms_.end());
    return QSeries(g, std::min(x.trunc_, y.trunc_), std::move(t));
}

QSeries sub(const QSeries& a, const QSeries& b) { return add(a, -b); }

QSeries mul(const QSeries& a, const QSeries& b) {
    long g = lcm_of(a.grid_, b.grid_);
    QSeries x = a.regrid(g), y = b.regrid(g);
    long va = x.valuation(), vb = y.valuation();
    long t = std::min(sat_add(x.trunc_, vb), sat_add(y.trunc_, va));
    if (x.terms_.empty() || y.terms_.empty()) return QSeries(g, t, {});
    long lo = va + vb;
    long hi = std::min(t, x.terms_.back().first + y.terms_.back().first + 1);
    Dense acc(lo, hi);
    Rational prod;
    for (const auto& [ka, ca] : x.terms_) {
        if (ka + vb >= hi) break;
        for (const auto& [kb, cb] : y.terms_) {
            long k = ka + kb;
            if (k >= hi) break;
            mpq_mul(prod.get_mpq_t(), ca.get_mpq_t(), cb.get_mpq_t());
            acc.at(k) += prod;
        }
    }
    return QSeries(g, t, acc.terms());
}

QSeries div(const QSeries& a, const QSeries& b) {
    if (b.terms_.empty()) throw DivisionByZeroSeries("divisor vanishes to its truncation");
    long g = lcm_of(a.grid_, b.grid_);
    QSeries x = a.regrid(g), y = b.regrid(g);
    long vb = y.valuation();
    if (!x.terms_.empty() && x.valuation() < vb)
        throw NegativeValuation("quotient would have a pole at Q=0");
    long va = x.valuation();
    if (y.terms_.size() == 1) {
        // Monomial divisor: shift and scale, exactness preserved.
        Rational inv = 1 / y.terms_.front().second;
        std::vector<QSeries::Term> t = x.terms_;
        for (auto& [k, c] : t) {
            k -= vb;
            c *= inv;
        }
        long tr = x.trunc_ == kExact ? kExact : x.trunc_ - vb;
        return QSeries(g, std::max(0L, tr), std::move(t));
    }
    long t = std::min(x.trunc_ == kExact ? kExact : x.trunc_ - vb,
                      y.trunc_ == kExact ? kExact : sat_add(y.trunc_ - 2 * vb, va));
    if (t == kExact) throw InsufficientTruncation("quotient of exact series needs a truncation");
    t = std::max(0L, t);
    long lo = va - vb;
    if (lo >= t) return QSeries(g, t, {});
    Dense q(lo, t);
    Rational inv = 1 / y.terms_.front().second;
    // a at index n+vb, indexed densely for lookup.
    Dense num(lo, t);
    for (const auto& [k, c] : x.terms_)
        if (k - vb < t) num.at(k - vb) = c;
    Rational acc, prod;
    for (long n = lo; n < t; ++n) {
        acc = num.at(n);
        for (size_t i = 1; i < y.terms_.size(); ++i) {
            long j = y.terms_[i].first - vb;
            if (n - j < lo) break;
            const Rational& qn = q.at(n - j);
            if (sgn(qn) == 0) continue;
            mpq_mul(prod.get_mpq_t(), y.terms_[i].second.get_mpq_t(), qn.get_mpq_t());
            acc -= prod;
        }
        mpq_mul(q.at(n).get_mpq_t(), acc.get_mpq_t(), inv.get_mpq_t());
    }
    return QSeries(g, t, q.terms());
}

QSeries pow(const QSeries& a, long n) {
    if (n < 0) return div(QSeries::constant(1), pow(a, -n));
    QSeries result = QSeries::constant(1), base = a;
    while (n > 0) {
        if (n & 1) result = mul(result, base);
        n >>= 1;
        if (n > 0) base = mul(base, base);
    }
    return result;
}

QSeries theta(const QSeries& f) {
    std::vector<QSeries::Term> t = f.terms_;
    for (auto& [k, c] : t) c *= frac(k, f.grid_);
    return QSeries(f.grid_, f.trunc_, std::move(t));
}

QSeries substitute_power(const QSeries& f, long num, long den) {
    if (num <= 0 || den <= 0) throw Error("InvalidArgument", "substitution powers must be positive");
    std::vector<QSeries::Term> t = f.terms_;
    for (auto& x : t) x.first = sat_mul(x.first, num);
    return QSeries(sat_mul(f.grid_, den), sat_mul(f.trunc_, num), std::move(t));
}

QSeries root(const QSeries& f, long r) {
    if (r <= 0) throw Error("InvalidArgument", "root order must be positive");
    if (r == 1) return f;
    if (f.terms_.empty()) throw DivisionByZeroSeries("root of a series vanishing to its truncation");
    long v = f.valuation();
    const Rational& c0 = f.terms_.front().second;
    auto lead = exact_root(c0, r);
    if (!lead) throw IrrationalLeadingRoot("leading coefficient " + to_plain(c0) + " has no rational " +
                                           std::to_string(r) + "-th root");
    if (f.exact() && f.terms_.size() > 1)
        throw InsufficientTruncation("root of an exact non-monomial series needs a truncation");
    long rel = f.exact() ? 1 : f.trunc_ - v;
    // Unit part u = f / (c0 Q^v); h = u^{1/r} by the J.C.P. Miller recurrence.
    std::vector<std::pair<long, Rational>> u;
    Rational inv0 = 1 / c0;
    for (size_t i = 1; i < f.terms_.size(); ++i) {
        long j = f.terms_[i].first - v;
        if (j >= rel) break;
        u.emplace_back(j, f.terms_[i].second * inv0);
    }
    Rational alpha_plus_1 = Rational(1, r) + 1;
    std::vector<Rational> h(static_cast<size_t>(rel));
    h[0] = 1;
    Rational acc, w, prod;
    for (long n = 1; n < rel; ++n) {
        acc = 0;
        for (const auto& [j, uj] : u) {
            if (j > n) break;
            const Rational& hp = h[static_cast<size_t>(n - j)];
            if (sgn(hp) == 0) continue;
            w = alpha_plus_1 * j - n;
            mpq_mul(prod.get_mpq_t(), w.get_mpq_t(), uj.get_mpq_t());
            acc += prod * hp;
        }
        h[static_cast<size_t>(n)] = acc / n;
    }
    std::vector<QSeries::Term> t;
    for (long j = 0; j < rel; ++j)
        if (sgn(h[static_cast<size_t>(j)]) != 0) t.emplace_back(v + j * r, *lead * h[static_cast<size_t>(j)]);
    long tr = f.exact() ? kExact : v + rel * r;
    return QSeries(sat_mul(f.grid_, r), tr, std::move(t));
}

QSeries rational_pow(const QSeries& f, const Rational& exponent) {
    long q = exponent.get_den().get_si();
    long p = exponent.get_num().get_si();
    return pow(root(f, q), p);
}

Rational common_trunc(const QSeries& a, const QSeries& b) {
    if (a.exact() && b.exact()) throw InsufficientTruncation("both series are exact");
    if (a.exact()) return b.trunc_exponent();
    if (b.exact()) return a.trunc_exponent();
    return std::min(a.trunc_exponent(), b.trunc_exponent());
}

Comparison equal_upto(const QSeries& a, const QSeries& b, const Rational& order) {
    for (const QSeries* s : {&a, &b})
        if (!s->exact() && s->trunc_exponent() < order)
            throw InsufficientTruncation("series known only below Q^" + to_plain(s->trunc_exponent()) +
                                         ", comparison requested below Q^" + to_plain(order));
    long g = lcm_of(lcm_of(a.grid(), b.grid()), order.get_den().get_si());
    QSeries x = a.regrid(g), y = b.regrid(g);
    long limit = Rational(order * g).get_num().get_si();
    auto ia = x.terms().begin(), ea = x.terms().end();
    auto ib = y.terms().begin(), eb = y.terms().end();
    while (true) {
        long ka = ia != ea ? ia->first : kExact;
        long kb = ib != eb ? ib->first : kExact;
        long k = std::min(ka, kb);
        if (k >= limit) return {};
        Rational ca = ka == k ? ia->second : Rational(0);
        Rational cb = kb == k ? ib->second : Rational(0);
        if (ca != cb) return {false, Mismatch{frac(k, g), ca, cb}};
        if (ka == k) ++ia;
        if (kb == k) ++ib;
    }
}

Comparison equal_common(const QSeries& a, const QSeries& b) {
    if (a.exact() && b.exact()) {
        long g = lcm_of(a.grid(), b.grid());
        long top = 0;
        for (const QSeries* s : {&a, &b})
            if (!s->terms().empty()) top = std::max(top, s->terms().back().first * (g / s->grid()));
        return equal_upto(a, b, frac(top + 1, g));
    }
    return equal_upto(a, b, common_trunc(a, b));
}

std::string to_json(const QSeries& f) {
    nlohmann::ordered_json j;
    j["grid_denominator"] = f.grid();
    if (f.exact())
        j["trunc"] = nullptr;
    else
        j["trunc"] = f.trunc();
    auto arr = nlohmann::ordered_json::array();
    for (const auto& [k, c] : f.terms()) arr.push_back(nlohmann::ordered_json::array({k, to_fraction(c)}));
    j["coeffs"] = arr;
    return j.dump();
}

QSeries series_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("series JSON: ") + e.what());
    }
    try {
        long grid = j.at("grid_denominator").get<long>();
        long trunc = j.at("trunc").is_null() ? QSeries::kExact : j.at("trunc").get<long>();
        std::vector<QSeries::Term> t;
        for (const auto& e : j.at("coeffs")) t.emplace_back(e.at(0).get<long>(), parse_rational(e.at(1).get<std::string>()));
        return QSeries(grid, trunc, std::move(t));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("series JSON: ") + e.what());
    }
}

std::string format_exponent(const Rational& e) {
    if (is_integer(e)) return e.get_str();
    return "(" + e.get_str() + ")";
}

std::string to_text(const QSeries& f, const std::string& var) {
    std::ostringstream out;
    bool first = true;
    for (const auto& [k, c] : f.terms()) {
        Rational e = frac(k, f.grid());
        Rational mag = abs(c);
        if (first)
            out << (sgn(c) < 0 ? "-" : "");
        else
            out << (sgn(c) < 0 ? " - " : " + ");
        first = false;
        bool unit = mag == 1;
        if (e == 0) {
            out << to_plain(mag);
            continue;
        }
        if (!unit) out << to_plain(mag) << "*";
        out << var;
        if (e != 1) out << "^" << format_exponent(e);
    }
    if (first) out << "0";
    if (!f.exact()) out << " + O(" << var << "^" << format_exponent(f.trunc_exponent()) << ")";
    return out.str();
}

}  // namespace qmf
