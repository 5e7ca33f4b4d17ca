#include <mutex>

#include "qmf/errors.hpp"
#include "qmf/generator.hpp"
#include "qmf/modforms.hpp"
#include "qmf/wdvv.hpp"

namespace qmf {

namespace {

// Extra precision taken on inputs so that divisions and theta_q in checked
// expressions still leave every compared coefficient exact.
constexpr long kMargin = 8;

struct ClosedFormCache {
    std::mutex mu;
    std::map<std::pair<std::string, std::string>, QSeries> q_series;
};

ClosedFormCache& cache() {
    static ClosedFormCache c;
    return c;
}

QSeries zero_below(long trunc) { return QSeries(1, trunc, {}); }

std::string first_term(const QSeries& f, const std::string& var) {
    const auto& [k, c] = f.terms().front();
    return to_plain(c) + "*" + var + "^" + format_exponent(Rational(k, f.grid()));
}

RadSeries resolve_in_q(const std::string& orb, const std::string& symbol, long trunc) {
    const Orbifold& o = orbifold(orb);
    if (o.has_correlator(symbol)) return closed_form_series(orb, symbol, trunc);
    auto open = symbol.find('<');
    if (open != std::string::npos) {
        std::string tag = symbol.substr(0, open);
        if (!tag.empty() && tag != orb) throw EvaluationError("'" + symbol + "' belongs to another orbifold");
        auto name = find_by_insertions(o, parse_insertions(symbol.substr(open)));
        return name ? closed_form_series(orb, *name, trunc) : zero_below(trunc);
    }
    // Generators are series in Q = q^r.
    if (GeneratorId::looks_like(symbol)) {
        long prec_Q = (trunc + o.r - 1) / o.r + 1;
        RadSeries g = generator(GeneratorId::parse(symbol), prec_Q);
        return substitute_power(g, o.r, 1);
    }
    throw UnknownCorrelator(symbol + " on " + orb);
}

}  // namespace

QSeries closed_form_series(const std::string& orb, const std::string& name, long trunc) {
    const Orbifold& o = orbifold(orb);
    const Correlator& c = o.correlator(name);
    auto key = std::make_pair(o.tag, c.name);
    {
        std::lock_guard lock(cache().mu);
        auto it = cache().q_series.find(key);
        if (it != cache().q_series.end() && it->second.trunc() >= trunc) return it->second.truncate(Rational(trunc));
    }
    long prec_Q = (trunc + o.r - 1) / o.r + 1;
    QSeries f = substitute_power(eval_rational(c.closed_form, prec_Q), o.r, 1).truncate(Rational(trunc));
    if (f.grid() != 1) throw EvaluationError(name + " on " + orb + " is not a series in integral powers of q");
    if (f.exact()) f = QSeries(1, trunc, f.terms());
    std::lock_guard lock(cache().mu);
    auto& slot = cache().q_series[key];
    if (slot.trunc() < f.trunc() || slot.exact()) slot = f;
    return f;
}

QSeries closed_form_Q(const std::string& orb, const std::string& name, long prec) {
    const Orbifold& o = orbifold(orb);
    return substitute_power(closed_form_series(orb, name, prec * o.r), 1, o.r);
}

Rational gw_invariant(const std::string& orb, const std::string& name, long d) {
    if (d < 0) throw InsufficientTruncation("degree must be non-negative");
    return closed_form_series(orb, name, d + 1).coeff(Rational(d));
}

RadSeries resolve_in_Q(const std::string& symbol, long prec) {
    auto dot = symbol.find('.');
    if (dot != std::string::npos) return closed_form_Q(symbol.substr(0, dot), symbol.substr(dot + 1), prec);
    auto open = symbol.find('<');
    if (open != std::string::npos) {
        std::string tag = symbol.substr(0, open);
        const Orbifold& o = orbifold(tag);
        auto name = find_by_insertions(o, parse_insertions(symbol.substr(open)));
        return name ? closed_form_Q(tag, *name, prec) : zero_below(prec);
    }
    if (GeneratorId::looks_like(symbol)) return generator(GeneratorId::parse(symbol), prec);
    throw EvaluationError("unbound symbol '" + symbol + "'");
}

QSeries evaluate_q(const std::string& orb, const std::string& expr, long trunc) {
    auto resolve = [&](const std::string& s) { return resolve_in_q(orb, s, trunc + kMargin); };
    QSeries f = eval_series(parse_expr(expr), resolve).rational();
    if (!f.exact() && f.trunc_exponent() < trunc)
        throw InsufficientTruncation(expr + " only known below q^" + format_exponent(f.trunc_exponent()));
    return f.truncate(Rational(trunc));
}

CheckResult check_equation(const std::string& orb, const LabeledEquation& le, long trunc) {
    CheckResult r;
    r.id = orb + "/" + le.label;
    r.anchor = orb + " WDVV system: " + le.text;
    try {
        auto resolve = [&](const std::string& s) { return resolve_in_q(orb, s, trunc + kMargin); };
        QSeries res = eval_series(residual_expr(le.eq), resolve).rational();
        if (!res.exact() && res.trunc_exponent() < trunc) {
            r.detail = "residual only known below q^" + format_exponent(res.trunc_exponent());
            return r;
        }
        res = res.truncate(Rational(trunc));
        if (!res.empty()) {
            r.detail = "residual starts " + first_term(res, "q");
            return r;
        }
        r.pass = true;
        r.detail = "zero below q^" + std::to_string(trunc);
    } catch (const Error& e) {
        r.detail = e.what();
    }
    return r;
}

std::vector<CheckResult> verify_system(const OdeSystem& sys, const std::string& variant, long trunc) {
    std::vector<CheckResult> out;
    for (const auto& le : sys.equations(variant)) out.push_back(check_equation(sys.orbifold, le, trunc));

    std::map<std::string, QSeries> given;
    for (const auto& g : sys.given) given[g] = closed_form_series(sys.orbifold, g, trunc);
    std::map<std::string, QSeries> solved;
    CheckResult run;
    run.id = sys.orbifold + "/solve";
    run.anchor = sys.orbifold + " WDVV system with boundary data";
    try {
        solved = solve_ode(sys, trunc, given);
        run.pass = true;
        run.detail = "solved below q^" + std::to_string(trunc);
    } catch (const Error& e) {
        run.detail = e.what();
    }
    out.push_back(run);
    const Orbifold& o = orbifold(sys.orbifold);
    for (const auto& [name, series] : solved) {
        if (!o.has_correlator(name)) continue;
        CheckResult r;
        r.id = sys.orbifold + "/solver-vs-closed-form/" + name;
        r.anchor = sys.orbifold + " closed form " + name + " = " + o.correlator(name).source;
        auto cmp = equal_upto(series, closed_form_series(sys.orbifold, name, trunc), Rational(trunc));
        r.pass = cmp.equal;
        r.detail = cmp.equal ? "equal below q^" + std::to_string(trunc)
                             : "first difference at q^" + format_exponent(cmp.first_mismatch->exponent) + ": solver " +
                                   to_plain(cmp.first_mismatch->lhs) + ", closed form " +
                                   to_plain(cmp.first_mismatch->rhs);
        out.push_back(r);
    }
    return out;
}

std::vector<CheckResult> verify_system(const std::string& orb, const std::string& variant, long trunc) {
    return verify_system(builtin_system(orb, variant), variant, trunc);
}

std::vector<CheckResult> verify_polynomial_relations(const std::string& orb, long trunc) {
    OdeSystem sys = builtin_system(orb, "full");
    std::vector<CheckResult> out;
    for (const auto& le : sys.relations) out.push_back(check_equation(orb, le, trunc));
    for (const auto& [name, e] : sys.defines) {
        LabeledEquation le;
        le.label = "define-" + name;
        le.text = name + " = " + to_string(e);
        le.eq = {make_name(name), e};
        out.push_back(check_equation(orb, le, trunc));
    }
    return out;
}

}  // namespace qmf
