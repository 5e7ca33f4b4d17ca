#include "qmf/quasipoly.hpp"

#include "qmf/errors.hpp"
#include "qmf/generator.hpp"
#include "qmf/modforms.hpp"

namespace qmf {

namespace {

Monomial times(const Monomial& a, const Monomial& b) {
    Monomial out = a;
    for (const auto& [s, k] : b) out[s] += k;
    return out;
}

std::string monomial_text(const Monomial& m) {
    std::string out;
    for (const auto& [s, k] : m) {
        if (!out.empty()) out += "*";
        out += s;
        if (k != 1) out += "^" + std::to_string(k);
    }
    return out;
}

int symbol_doubled_weight(const std::string& s) {
    if (!GeneratorId::looks_like(s)) throw EvaluationError("symbol '" + s + "' has no modular weight");
    return GeneratorId::parse(s).doubled_weight();
}

bool is_e_symbol(const std::string& s) {
    return GeneratorId::looks_like(s) && GeneratorId::parse(s).is_e_type();
}

}  // namespace

std::string canonical_symbol(const std::string& name) {
    if (GeneratorId::looks_like(name)) return GeneratorId::parse(name).to_string();
    return name;
}

void QuasiPoly::insert(const Monomial& m, const Surd& c) {
    if (sgn(c.coeff()) == 0) return;
    Key key{m, c.radical()};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(std::move(key), c.coeff());
        return;
    }
    it->second += c.coeff();
    if (sgn(it->second) == 0) terms_.erase(it);
}

QuasiPoly QuasiPoly::constant(const Surd& c) {
    QuasiPoly p;
    p.insert({}, c);
    return p;
}

QuasiPoly QuasiPoly::symbol(const std::string& name) {
    QuasiPoly p;
    p.insert({{canonical_symbol(name), 1}}, Surd(1));
    return p;
}

QuasiPoly QuasiPoly::from_expr(const ExprPtr& e) {
    auto arg = [&](size_t i) { return from_expr(e->args[i]); };
    switch (e->op) {
        case Expr::Op::Num: return constant(Surd(e->value));
        case Expr::Op::Name: return symbol(e->name);
        case Expr::Op::Add: return add(arg(0), arg(1));
        case Expr::Op::Sub: return sub(arg(0), arg(1));
        case Expr::Op::Mul: return mul(arg(0), arg(1));
        case Expr::Op::Neg: return scale(arg(0), Surd(-1));
        case Expr::Op::Div: {
            QuasiPoly d = arg(1);
            if (!d.is_constant()) throw EvaluationError("polynomial division by non-constant " + qmf::to_string(e->args[1]));
            return scale(arg(0), d.constant_value().inverse());
        }
        case Expr::Op::Pow: {
            QuasiPoly b = arg(0);
            if (b.is_constant()) return constant(b.constant_value().pow(e->exponent));
            if (!is_integer(e->exponent) || sgn(e->exponent) < 0)
                throw EvaluationError("polynomial power must be a non-negative integer, got " + e->exponent.get_str());
            return pow(b, static_cast<unsigned>(e->exponent.get_num().get_ui()));
        }
        case Expr::Op::Theta: throw EvaluationError("theta_q is not allowed in a polynomial");
    }
    throw EvaluationError("unknown expression node");
}

QuasiPoly QuasiPoly::parse(const std::string& text) { return from_expr(parse_expr(text)); }

bool QuasiPoly::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_.begin()->first.first.empty();
}

Surd QuasiPoly::constant_value() const {
    if (!is_constant()) throw EvaluationError("not a constant: " + to_string());
    if (terms_.empty()) return Surd(0);
    return Surd(terms_.begin()->second, terms_.begin()->first.second);
}

std::set<std::string> QuasiPoly::symbols() const {
    std::set<std::string> out;
    for (const auto& [key, c] : terms_)
        for (const auto& [s, k] : key.first) out.insert(s);
    return out;
}

int QuasiPoly::doubled_weight() const {
    if (terms_.empty()) throw InhomogeneousPolynomial("zero polynomial has no weight");
    const Monomial* first = nullptr;
    int w0 = 0;
    for (const auto& [key, c] : terms_) {
        int w = 0;
        for (const auto& [s, k] : key.first) w += k * symbol_doubled_weight(s);
        if (!first) {
            first = &key.first;
            w0 = w;
        } else if (w != w0) {
            std::string a = first->empty() ? "1" : monomial_text(*first);
            std::string b = key.first.empty() ? "1" : monomial_text(key.first);
            throw InhomogeneousPolynomial("'" + a + "' has weight " + to_plain(frac(w0, 2)) + " but '" + b +
                                          "' has weight " + to_plain(frac(w, 2)));
        }
    }
    return w0;
}

Rational QuasiPoly::weight() const { return frac(doubled_weight(), 2); }

QuasiPoly QuasiPoly::partial(const std::string& symbol) const {
    const std::string s = canonical_symbol(symbol);
    QuasiPoly out;
    for (const auto& [key, c] : terms_) {
        auto it = key.first.find(s);
        if (it == key.first.end()) continue;
        Monomial m = key.first;
        int k = it->second;
        if (k == 1)
            m.erase(s);
        else
            m[s] = k - 1;
        out.insert(m, Surd(c * k, key.second));
    }
    return out;
}

QuasiPoly QuasiPoly::partial_E() const {
    std::set<std::string> es;
    for (const auto& s : symbols())
        if (is_e_symbol(s)) es.insert(s);
    if (es.size() > 1) throw MixedEGenerators(*es.begin() + " and " + *std::next(es.begin()));
    if (es.empty()) return {};
    return partial(*es.begin());
}

std::string QuasiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [key, c] : terms_) {
        const auto& [m, rad] = key;
        bool negative = sgn(c) < 0;
        Rational mag = abs(c);
        std::string body;
        if (mag != 1 || (m.empty() && rad.is_one())) body = to_plain(mag);
        if (!rad.is_one()) body += (body.empty() ? "" : "*") + rad.to_string();
        if (!m.empty()) body += (body.empty() ? "" : "*") + monomial_text(m);
        if (out.empty())
            out = (negative ? "-" : "") + body;
        else
            out += (negative ? " - " : " + ") + body;
    }
    return out;
}

QuasiPoly add(const QuasiPoly& a, const QuasiPoly& b) {
    QuasiPoly out = a;
    for (const auto& [key, c] : b.terms_) out.insert(key.first, Surd(c, key.second));
    return out;
}

QuasiPoly sub(const QuasiPoly& a, const QuasiPoly& b) { return add(a, scale(b, Surd(-1))); }

QuasiPoly mul(const QuasiPoly& a, const QuasiPoly& b) {
    QuasiPoly out;
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_)
            out.insert(times(ka.first, kb.first), Surd(ca, ka.second) * Surd(cb, kb.second));
    return out;
}

QuasiPoly scale(const QuasiPoly& a, const Surd& c) {
    QuasiPoly out;
    for (const auto& [key, v] : a.terms_) out.insert(key.first, Surd(v, key.second) * c);
    return out;
}

QuasiPoly pow(const QuasiPoly& a, unsigned n) {
    QuasiPoly out = QuasiPoly::constant(Surd(1));
    QuasiPoly base = a;
    while (n > 0) {
        if (n & 1U) out = mul(out, base);
        n >>= 1U;
        if (n > 0) base = mul(base, base);
    }
    return out;
}

RadSeries eval(const QuasiPoly& p, const SeriesResolver& resolve) {
    // Powers of each symbol are shared across monomials.
    std::map<std::string, std::vector<RadSeries>> powers;
    auto power_of = [&](const std::string& s, int k) -> const RadSeries& {
        auto& v = powers[s];
        if (v.empty()) v.push_back(resolve(s));
        while (static_cast<int>(v.size()) < k) v.push_back(mul(v.back(), v.front()));
        return v[static_cast<size_t>(k - 1)];
    };
    RadSeries out{QSeries()};
    for (const auto& [key, c] : p.terms()) {
        RadSeries term{QSeries::constant(1)};
        for (const auto& [s, k] : key.first) term = mul(term, power_of(s, k));
        out = add(out, term.scaled(Surd(c, key.second)));
    }
    return out;
}

RadSeries eval(const QuasiPoly& p, long prec) {
    return eval(p, [prec](const std::string& s) -> RadSeries {
        if (!GeneratorId::looks_like(s)) throw EvaluationError("unbound symbol '" + s + "'");
        return generator(GeneratorId::parse(s), prec);
    });
}

QSeries eval_rational(const QuasiPoly& p, long prec) { return eval(p, prec).rational(); }

}  // namespace qmf
