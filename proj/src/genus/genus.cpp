#include "qmf/genus.hpp"

#include "qmf/errors.hpp"
#include "qmf/generator.hpp"
#include "qmf/modforms.hpp"
#include "qmf/wdvv.hpp"

namespace qmf {

namespace {

QSeries to_Q(const QSeries& f_q, int r, long trunc) { return substitute_power(f_q, 1, r).truncate(Rational(trunc)); }

void require_nonzero(const std::string& orb, const std::string& name, long trunc) {
    if (closed_form_series(orb, name, trunc).empty())
        throw ZeroLeadingDivisor(name + " on " + orb + " vanishes below q^" + std::to_string(trunc));
}

}  // namespace

QuasiPoly genus1_poly(const std::string& orb) {
    const Orbifold& o = orbifold(orb);
    if (o.tag == "X1") return QuasiPoly::parse("-Ei2/24");
    if (o.tag == "X2") return QuasiPoly::parse("(-3*E@4 + 2*A@4^2 - C@4^2)/12");
    if (o.tag == "X3") return QuasiPoly::parse("(-2*E@3 + A@3^2)/12");
    // Written in the level-2 generators so that its E-derivative is the one
    // of the modular group attached to X4.
    if (o.tag == "X4") return QuasiPoly::parse("(-3*E@2 + A@2^2)/24");
    return QuasiPoly::parse("-E@1*/12");
}

QSeries genus1_closed(const std::string& orb, long trunc) {
    const Orbifold& o = orbifold(orb);
    return eisenstein(2, trunc).scaled(o.tag == "X1" ? frac(-1, 24) : frac(-1, 12));
}

QSeries genus1_elliptic_from_eta(long trunc) {
    QSeries e = eta(trunc + 1);
    return (-(theta(e) / e)).truncate(Rational(trunc));
}

GetzlerResult genus1_getzler(const std::string& orb, long trunc) {
    const Orbifold& o = orbifold(orb);
    const long tq = trunc * o.r;
    GetzlerResult out;
    auto part = [&](const std::string& name, const std::string& expr) {
        QSeries f = evaluate_q(o.tag, expr, tq);
        out.parts.emplace_back(name, f);
        return f;
    };
    auto form = [&](const std::string& name, const std::string& expr) {
        out.forms.emplace_back(name, to_Q(evaluate_q(o.tag, expr, tq), o.r, trunc));
    };
    if (o.tag == "X2") {
        require_nonzero(o.tag, "X", tq);
        part("(-2Y+6Z)/3", "(-2*Y + 6*Z)/3");
        part("theta_q X/(4X)", "theta_q X/(4*X)");
        form("before simplification", "(-2*Y + 6*Z)/3 - theta_q X/(4*X)");
        form("simplified", "Y/3 + Z");
    } else if (o.tag == "X3") {
        require_nonzero(o.tag, "Z5", tq);
        // 6 d34 + d03 + d04 - 2 d_beta = 0 with d34 = 4 Z5 <<P>>.
        part("delta_03", "Z5*(72*Z3 + 144*Z2)");
        part("delta_04", "8*theta_q Z5");
        part("delta_beta", "Z5*(9*Z3 + 90*Z2) + 36*Z6^2");
        form("solved from the boundary integrals",
             "(2*(Z5*(9*Z3 + 90*Z2) + 36*Z6^2) - Z5*(72*Z3 + 144*Z2) - 8*theta_q Z5)/(24*Z5)");
    } else if (o.tag == "X4") {
        require_nonzero(o.tag, "Z8", tq);
        part("polynomial part", "(4*Z2 + 2*Z3 - Z5 - 16*Z6 - 4*U - 4*V)/6");
        part("quotient part", "(8*Z12*(3*Z10 + 8*Z11 + 8*Y) - 9*theta_q Z8)/(24*Z8)");
        form("combination",
             "(4*Z2 + 2*Z3 - Z5 - 16*Z6 - 4*U - 4*V)/6 + (8*Z12*(3*Z10 + 8*Z11 + 8*Y) - 9*theta_q Z8)/(24*Z8)");
    } else if (o.tag == "X6") {
        form("3 Z9", "3*Z9");
    } else {
        throw UnsupportedOrbifold("no genus-zero data for " + o.tag);
    }
    out.value = out.forms.front().second;
    return out;
}

Rational genus1_E_derivative(const std::string& orb) {
    QuasiPoly d = genus1_poly(orb).partial_E();
    if (!d.is_constant()) throw EvaluationError("E-derivative is not constant: " + d.to_string());
    Surd c = d.constant_value();
    if (!c.radical().is_one()) throw IrrationalSeries("E-derivative " + c.to_string());
    return c.coeff();
}

long genus2_constant(int r) {
    switch (r) {
        case 2: return 48;
        case 3: return 144;
        case 4: return 252;
        case 6: return 480;
        default: throw UnsupportedOrbifold("no genus-two constant for r = " + std::to_string(r));
    }
}

QSeries genus2_formula(const QSeries& f, int r) {
    Rational k = frac(1, 10) + frac(1, 10 * r) + frac(genus2_constant(r), 120);
    return add(mul(f, f).scaled(frac(7, 5)), theta(f).scaled(k * r));
}

Genus2Result genus2_Ppsi2(const std::string& orb, long trunc) {
    const Orbifold& o = orbifold(orb);
    Genus2Result out;
    out.series = genus2_formula(genus1_closed(orb, trunc), o.r);
    // F = -Ei2/12 and theta_Q Ei2 = (Ei2^2 - Ei4)/12.
    Rational k = frac(1, 10) + frac(1, 10 * o.r) + frac(genus2_constant(o.r), 120);
    QuasiPoly f2 = QuasiPoly::parse("Ei2^2/144");
    QuasiPoly theta_f = QuasiPoly::parse("-(Ei2^2 - Ei4)/144");
    out.poly = add(scale(f2, Surd(frac(7, 5))), scale(theta_f, Surd(Rational(k * o.r))));
    return out;
}

}  // namespace qmf
