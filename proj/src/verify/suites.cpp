#include <algorithm>
#include <functional>
#include <future>
#include <map>

#include "qmf/errors.hpp"
#include "qmf/generator.hpp"
#include "qmf/genus.hpp"
#include "qmf/modforms.hpp"
#include "qmf/verify.hpp"
#include "qmf/wdvv.hpp"

namespace qmf {

namespace {

const std::vector<std::string> kOrbifolds = {"X2", "X3", "X4", "X6"};

Check from_result(const CheckResult& r, const std::string& prefix = "") {
    return {prefix + r.id, r.anchor, r.pass, r.detail};
}

Check compare(std::string id, std::string ref, const QSeries& a, const QSeries& b, long trunc,
              const std::string& var = "Q") {
    Check c{std::move(id), std::move(ref), false, ""};
    try {
        auto cmp = equal_upto(a, b, Rational(trunc));
        c.pass = cmp.equal;
        c.detail = cmp.equal ? "equal below " + var + "^" + std::to_string(trunc)
                             : "first difference at " + var + "^" + format_exponent(cmp.first_mismatch->exponent) +
                                   ": " + to_plain(cmp.first_mismatch->lhs) + " vs " +
                                   to_plain(cmp.first_mismatch->rhs);
    } catch (const Error& e) {
        c.detail = e.what();
    }
    return c;
}

// Runs `body` and turns a library error into a failed check.
Check guarded(std::string id, std::string ref, const std::function<Check()>& body) {
    try {
        return body();
    } catch (const Error& e) {
        return {std::move(id), std::move(ref), false, e.what()};
    }
}

std::vector<Check> ramanujan(long trunc) {
    std::vector<Check> out;
    for (int level : {4, 3, 2, 1}) {
        const LevelInfo info = level_info(level);
        const std::string n = level_name(level);
        const std::string A = "A@" + n, B = "B@" + n, C = "C@" + n, E = "E@" + n;
        const std::string r = std::to_string(info.r);
        const std::string h = "(1/" + std::to_string(2 * info.r) + ")";
        // The star of "1*" is part of the name, so every product needs spaces.
        auto p = [](const std::string& x) { return x + " "; };
        const std::vector<std::pair<std::string, std::string>> eqs = {
            {"A", "theta_q " + p(A) + "= " + h + "*" + p(A) + "*(" + p(E) + "+ (" + p(C) + "^" + r + " - " + p(B) +
                      "^" + r + ")/" + p(A) + "^" + r + "*" + p(A) + "^2)"},
            {"B", "theta_q " + p(B) + "= " + h + "*" + p(B) + "*(" + p(E) + "- " + p(A) + "^2)"},
            {"C", "theta_q " + p(C) + "= " + h + "*" + p(C) + "*(" + p(E) + "+ " + p(A) + "^2)"},
            {"E", "theta_q " + p(E) + "= " + h + "*(" + p(E) + "^2 - " + p(A) + "^4)"},
        };
        for (const auto& [g, text] : eqs) {
            Identity id;
            id.id = "N=" + n + "/theta " + g;
            id.paper_ref = "Ramanujan identity for " + g + " at level " + n + ", theta_Q = Q d/dQ, 1/(2r) with r = " + r;
            id.text = text;
            id.eq = parse_equation(text);
            out.push_back(check_identity(id, trunc));
        }
    }
    return out;
}

std::vector<Check> table(const std::string& name, long trunc) {
    std::vector<Check> out;
    for (const auto& id : identity_table(name)) out.push_back(check_identity(id, trunc));
    return out;
}

// Divisor equation in both variables: theta_q f(q) = r (theta_Q f)(Q = q^r).
std::vector<Check> theta_consistency(const std::string& tag, long trunc) {
    const Orbifold& o = orbifold(tag);
    std::vector<Check> out;
    const long prec_Q = (trunc + o.r - 1) / o.r + 1;
    for (const auto& c : o.correlators) {
        std::string id = tag + "/theta_q-vs-theta_Q/" + c.name;
        std::string ref = tag + " " + c.name + ": theta_q = " + std::to_string(o.r) + " theta_Q under q = Q^(1/r)";
        out.push_back(guarded(id, ref, [&] {
            QSeries lhs = theta(closed_form_series(tag, c.name, trunc));
            QSeries rhs = substitute_power(theta(closed_form_Q(tag, c.name, prec_Q)).scaled(o.r), o.r, 1);
            return compare(id, ref, lhs, rhs, trunc, "q");
        }));
    }
    return out;
}

std::vector<Check> wdvv_for(const std::string& tag, long trunc) {
    std::vector<Check> out;
    for (const char* variant : {"minimal", "full"})
        for (const auto& r : verify_system(tag, variant, trunc)) out.push_back(from_result(r, std::string(variant) + "/"));
    for (const auto& r : verify_polynomial_relations(tag, trunc)) out.push_back(from_result(r, "relations/"));
    auto theta_checks = theta_consistency(tag, trunc);
    out.insert(out.end(), theta_checks.begin(), theta_checks.end());
    if (tag == "X4")
        for (const auto& r : verify_system(nonbasic_system(), "full", trunc)) out.push_back(from_result(r, "nonbasic/"));
    return out;
}

std::vector<Check> wdvv(long trunc) {
    std::vector<std::future<std::vector<Check>>> jobs;
    for (const auto& tag : kOrbifolds) jobs.push_back(std::async(std::launch::async, wdvv_for, tag, trunc));
    std::vector<Check> out;
    for (auto& j : jobs) {
        auto part = j.get();
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

std::vector<Check> potentials(long trunc) {
    std::vector<Check> out;
    for (const char* tag : {"X2", "X3"})
        for (const auto& r : verify_potential(tag, trunc, std::min(trunc, 30L))) out.push_back(from_result(r));
    return out;
}

std::vector<Check> genus1(long trunc) {
    std::vector<Check> out;
    std::map<std::string, QSeries> values;
    for (const auto& tag : kOrbifolds) {
        const Orbifold& o = orbifold(tag);
        const QSeries closed = genus1_closed(tag, trunc);
        try {
            GetzlerResult g = genus1_getzler(tag, trunc);
            values[tag] = g.value;
            // Stratum contributions go into the detail for auditing.
            std::string parts;
            for (const auto& [name, f] : g.parts)
                parts += "; " + name + " = " + to_text(f.truncate(Rational(std::min(f.trunc_exponent(), Rational(4)))), "q");
            for (const auto& [name, f] : g.forms) {
                Check c = compare(tag + "/getzler/" + name,
                                  tag + " <<P>>_{1,1} from Getzler's relation (" + name + ") equals -Ei2/12", f, closed,
                                  trunc);
                c.detail += parts;
                out.push_back(std::move(c));
            }
        } catch (const Error& e) {
            out.push_back({tag + "/getzler", tag + " <<P>>_{1,1} from Getzler's relation", false, e.what()});
        }
        out.push_back(guarded(tag + "/poly", tag + " <<P>>_{1,1} in the orbifold generators equals -Ei2/12", [&] {
            return compare(tag + "/poly", tag + " <<P>>_{1,1} in the orbifold generators equals -Ei2/12",
                           eval_rational(genus1_poly(tag), trunc), closed, trunc);
        }));
        out.push_back(guarded(tag + "/d_E", tag + " holomorphic anomaly: d<<P>>_{1,1}/dE_N = -1/(2r) = -1/2 + mu/24",
                              [&] {
                                  Rational d = genus1_E_derivative(tag);
                                  Rational want = frac(-1, 2 * o.r);
                                  Rational mu_form = frac(-1, 2) + frac(o.mu, 24);
                                  Check c{tag + "/d_E",
                                          tag + " holomorphic anomaly: d<<P>>_{1,1}/dE_N = -1/(2r) = -1/2 + mu/24",
                                          d == want && want == mu_form, ""};
                                  c.detail = "d/dE = " + to_plain(d) + ", -1/(2r) = " + to_plain(want) +
                                             ", -1/2 + mu/24 = " + to_plain(mu_form);
                                  return c;
                              }));
        out.push_back(guarded(tag + "/d_Ei2", tag + " d/dE_N = (6/r) d/dEi2 on <<P>>_{1,1} = -Ei2/12", [&] {
            Rational d = QuasiPoly::parse("-Ei2/12").partial("Ei2").constant_value().coeff() * frac(6, o.r);
            return Check{tag + "/d_Ei2", tag + " d/dE_N = (6/r) d/dEi2 on <<P>>_{1,1} = -Ei2/12",
                         d == genus1_E_derivative(tag),
                         "(6/r) d/dEi2 = " + to_plain(d) + ", d/dE_N = " + to_plain(genus1_E_derivative(tag))};
        }));
    }
    out.push_back(guarded("X1/eta", "elliptic curve: theta_q(-log eta) = -Ei2/24", [&] {
        return compare("X1/eta", "elliptic curve: theta_q(-log eta) = -Ei2/24", genus1_elliptic_from_eta(trunc),
                       genus1_closed("X1", trunc), trunc);
    }));
    out.push_back(guarded("X1/poly", "elliptic curve <<P>>_{1,1} = -Ei2/24", [&] {
        return compare("X1/poly", "elliptic curve <<P>>_{1,1} = -Ei2/24", eval_rational(genus1_poly("X1"), trunc),
                       genus1_closed("X1", trunc), trunc);
    }));
    for (size_t i = 0; i + 1 < kOrbifolds.size(); ++i) {
        const auto &a = kOrbifolds[i], &b = kOrbifolds[i + 1];
        std::string id = "r-independence/" + a + "=" + b;
        std::string ref = "<<P>>_{1,1} as a series in Q does not depend on r";
        if (values.count(a) && values.count(b))
            out.push_back(compare(id, ref, values[a], values[b], trunc));
        else
            out.push_back({id, ref, false, "a Getzler value is missing"});
    }
    return out;
}

std::vector<Check> genus2(long trunc) {
    std::vector<Check> out;
    for (const auto& tag : kOrbifolds) {
        const Orbifold& o = orbifold(tag);
        const std::string ref = tag + " <<P psi^2>>_{2,1} = (7/5)F^2 + (1/10 + 1/(10r) + c_r/120) theta_q F, c_r = " +
                                std::to_string(genus2_constant(o.r));
        out.push_back(guarded(tag + "/series-vs-Ei2", ref, [&] {
            Genus2Result g = genus2_Ppsi2(tag, trunc);
            return compare(tag + "/series-vs-Ei2", ref + "; re-evaluated with theta_Q Ei2 = (Ei2^2 - Ei4)/12",
                           g.series, eval_rational(g.poly, trunc), trunc);
        }));
        out.push_back(guarded(tag + "/weight", tag + " <<P psi^2>>_{2,1} is homogeneous of weight 4", [&] {
            Rational w = genus2_Ppsi2(tag, 1).poly.weight();
            return Check{tag + "/weight", tag + " <<P psi^2>>_{2,1} is homogeneous of weight 4", w == 4,
                         "weight " + to_plain(w)};
        }));
        out.push_back(guarded(tag + "/zero-input", "genus-two formula is zero on F = 0", [&] {
            QSeries z = genus2_formula(QSeries(1, trunc, {}), o.r);
            return Check{tag + "/zero-input", "genus-two formula is zero on F = 0", z.empty(),
                         z.empty() ? "zero" : "nonzero at Q^" + format_exponent(z.valuation_exponent())};
        }));
    }
    Check x1{"X1/unsupported", "genus-two constant exists only for r = 2, 3, 4, 6", false, "no error raised"};
    try {
        genus2_Ppsi2("X1", trunc);
    } catch (const UnsupportedOrbifold& e) {
        x1.pass = true;
        x1.detail = e.what();
    } catch (const Error& e) {
        x1.detail = std::string("wrong error: ") + e.what();
    }
    out.push_back(x1);
    return out;
}

std::vector<Check> integrality(long trunc) {
    std::vector<Check> out;
    for (int level : {4, 3, 2, 1}) {
        for (const char* g : {"A", "B", "C"}) {
            const std::string name = std::string(g) + "@" + level_name(level);
            const std::string ref = name + " has integral q-expansion coefficients";
            out.push_back(guarded(name, ref, [&] {
                GeneratorId id = GeneratorId::parse(name);
                // C@2 and C@1* carry an irrational scale; their normalized
                // series is what has to be integral.
                bool rational_scale = generator_scale(id).radical().is_one();
                QSeries f = rational_scale ? generator_series(id, trunc) : generator_normalized(id, trunc);
                IntegralityResult r = integrality_check(f);
                std::string what = rational_scale ? "" : "normalized ";
                return Check{name, ref, r.integral,
                             r.integral ? what + "coefficients integral below Q^" + std::to_string(trunc)
                                        : what + "coefficient " + to_plain(r.coefficient) + " at Q^" +
                                              format_exponent(*r.exponent)};
            }));
        }
    }
    for (const auto& tag : kOrbifolds) {
        const std::string id = tag + "/12<<P>>_{1,1}";
        const std::string ref = tag + ": 12 <<P>>_{1,1} has integral coefficients";
        out.push_back(guarded(id, ref, [&] {
            IntegralityResult r = integrality_check(eval_rational(genus1_poly(tag), trunc), Rational(12));
            return Check{id, ref, r.integral,
                         r.integral ? "integral below Q^" + std::to_string(trunc)
                                    : to_plain(r.coefficient) + " at Q^" + format_exponent(*r.exponent)};
        }));
    }
    return out;
}

std::vector<Check> weights() {
    std::vector<Check> out;
    for (const auto& tag : kOrbifolds) {
        for (const auto& c : orbifold(tag).correlators) {
            const std::string id = tag + "/" + c.name;
            const std::string ref = tag + " " + c.name + " " + insertions_text(c.insertions) +
                                    ": weight T + 2D + 2g - 2 = " + std::to_string(c.expected_weight());
            out.push_back(guarded(id, ref, [&] {
                if (c.closed_form.is_zero()) return Check{id, ref, true, "identically zero"};
                Rational w = c.closed_form.weight();
                return Check{id, ref, w == c.expected_weight(), "closed form has weight " + to_plain(w)};
            }));
        }
    }
    for (const auto& tag : orbifold_tags()) {
        const std::string id = tag + "/<<P>>_{1,1}";
        const std::string ref = tag + " <<P>>_{1,1}: weight T + 2D + 2g - 2 = 2";
        out.push_back(guarded(id, ref, [&] {
            Rational w = genus1_poly(tag).weight();
            return Check{id, ref, w == 2, "weight " + to_plain(w)};
        }));
    }
    for (const auto& tag : kOrbifolds) {
        const std::string id = tag + "/<<P psi^2>>_{2,1}";
        const std::string ref = tag + " <<P psi^2>>_{2,1}: weight 4";
        out.push_back(guarded(id, ref, [&] {
            Rational w = genus2_Ppsi2(tag, 1).poly.weight();
            return Check{id, ref, w == 4, "weight " + to_plain(w)};
        }));
    }
    return out;
}

}  // namespace

std::vector<std::string> suite_names() {
    return {"ramanujan", "isogeny", "theta", "wdvv", "potentials", "genus1", "genus2", "cross", "integrality", "weights"};
}

long default_trunc(const std::string& suite) {
    static const std::map<std::string, long> orders = {
        {"ramanujan", 50}, {"isogeny", 50}, {"theta", 50},       {"wdvv", 100},  {"potentials", 50},
        {"genus1", 100},   {"genus2", 50},  {"cross", 50},       {"integrality", 200}, {"weights", 0}};
    auto it = orders.find(suite);
    if (it == orders.end()) throw UnknownSuite("'" + suite + "'");
    return it->second;
}

SuiteReport run_suite(const std::string& name, long trunc) {
    long t = trunc > 0 ? trunc : default_trunc(name);
    SuiteReport rep;
    rep.suite = name;
    rep.trunc = name == "weights" ? 0 : t;
    if (name == "ramanujan") rep.checks = ramanujan(t);
    else if (name == "isogeny" || name == "theta" || name == "cross") rep.checks = table(name, t);
    else if (name == "wdvv") rep.checks = wdvv(t);
    else if (name == "potentials") rep.checks = potentials(t);
    else if (name == "genus1") rep.checks = genus1(t);
    else if (name == "genus2") rep.checks = genus2(t);
    else if (name == "integrality") rep.checks = integrality(t);
    else if (name == "weights") rep.checks = weights();
    else throw UnknownSuite("'" + name + "'");
    std::stable_sort(rep.checks.begin(), rep.checks.end(), [](const Check& a, const Check& b) { return a.id < b.id; });
    return rep;
}

}  // namespace qmf
