#include <algorithm>
#include <mutex>
#include <sstream>

#include "qmf/errors.hpp"
#include "qmf/generator.hpp"
#include "qmf/wdvv.hpp"

namespace qmf {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string part; std::getline(in, part, sep);) out.push_back(trim(part));
    return out;
}

// "t1^2*t4*t5"
TMonomial parse_tmonomial(const std::string& text) {
    TMonomial m;
    for (const auto& f : split(text, '*')) {
        if (f.size() < 2 || f[0] != 't') throw ParseError("bad potential monomial '" + text + "'");
        auto caret = f.find('^');
        int idx = std::stoi(f.substr(1, caret == std::string::npos ? std::string::npos : caret - 1));
        int k = caret == std::string::npos ? 1 : std::stoi(f.substr(caret + 1));
        m[idx] += k;
    }
    return m;
}

std::string tmonomial_text(const TMonomial& m) {
    std::string out;
    for (const auto& [i, k] : m) {
        if (!out.empty()) out += "*";
        out += "t" + std::to_string(i) + (k > 1 ? "^" + std::to_string(k) : "");
    }
    return out;
}

QuasiPoly in_generators(const Orbifold& orb, const QuasiPoly& p) {
    QuasiPoly out;
    for (const auto& [key, c] : p.terms()) {
        QuasiPoly term = QuasiPoly::constant(Surd(c, key.second));
        for (const auto& [s, k] : key.first) {
            QuasiPoly f = GeneratorId::looks_like(s) ? QuasiPoly::symbol(s) : orb.correlator(s).closed_form;
            term = mul(term, pow(f, static_cast<unsigned>(k)));
        }
        out = add(out, term);
    }
    return out;
}

PotentialTable load_table(const std::string& tag) {
    const Orbifold& orb = orbifold(tag);
    PotentialTable t;
    t.orbifold = tag;
    std::istringstream in(data_file("potential_" + tag + ".txt"));
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("basis ", 0) == 0) {
            std::istringstream ws(line.substr(6));
            for (std::string w; ws >> w;) t.basis.push_back(parse_insertions(w).front());
            continue;
        }
        if (line.rfind("pairing ", 0) == 0) {
            t.pairing = parse_rational(trim(line.substr(8)));
            continue;
        }
        auto cols = split(line, '|');
        if (cols.size() != 3) throw ParseError("bad potential line '" + line + "'");
        Rational factor = parse_rational(cols[0]);
        QuasiPoly f = scale(in_generators(orb, QuasiPoly::parse(cols[2])), Surd(factor));
        for (const auto& m : split(cols[1], ',')) {
            TMonomial tm = parse_tmonomial(m);
            auto& slot = t.coefficients[tm];
            slot = add(slot, f);
        }
    }
    return t;
}

// Polynomial in the twisted coordinates with dense q-series coefficients.
using Exps = std::vector<int>;
using Coeffs = std::vector<Rational>;
using SPoly = std::map<Exps, Coeffs>;

void accumulate(SPoly& out, const Exps& e, const Coeffs& c) {
    auto [it, fresh] = out.try_emplace(e, c);
    if (!fresh)
        for (size_t i = 0; i < c.size(); ++i) it->second[i] += c[i];
}

SPoly product(const SPoly& a, const SPoly& b, size_t n) {
    SPoly out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            Exps e(ea.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            Coeffs c(n);
            for (size_t i = 0; i < n; ++i) {
                if (ca[i] == 0) continue;
                for (size_t j = 0; i + j < n; ++j) c[i + j] += ca[i] * cb[j];
            }
            accumulate(out, e, c);
        }
    return out;
}

bool same(const SPoly& a, const SPoly& b) {
    auto nonzero = [](const Coeffs& c) {
        for (const auto& x : c)
            if (x != 0) return true;
        return false;
    };
    for (const auto& [e, c] : a) {
        auto it = b.find(e);
        if (it == b.end()) {
            if (nonzero(c)) return false;
        } else if (c != it->second) {
            return false;
        }
    }
    for (const auto& [e, c] : b)
        if (!a.count(e) && nonzero(c)) return false;
    return true;
}

}  // namespace

const PotentialTable& potential_table(const std::string& tag) {
    static std::mutex mu;
    static std::map<std::string, PotentialTable> tables;
    const Orbifold& orb = orbifold(tag);
    if (orb.tag != "X2" && orb.tag != "X3") throw UnsupportedOrbifold("no tabulated potential for " + orb.tag);
    std::lock_guard lock(mu);
    auto it = tables.find(orb.tag);
    if (it == tables.end()) it = tables.emplace(orb.tag, load_table(orb.tag)).first;
    return it->second;
}

std::map<TMonomial, QuasiPoly> potential_coefficients(const std::string& orbifold) {
    return potential_table(orbifold).coefficients;
}

std::vector<CheckResult> verify_potential(const std::string& tag, long trunc, long assoc_trunc) {
    const PotentialTable& t = potential_table(tag);
    const Orbifold& orb = orbifold(tag);
    std::vector<CheckResult> out;

    // Each coefficient times the symmetry factor is a correlator.
    for (const auto& [m, f] : t.coefficients) {
        CheckResult r;
        r.id = tag + "/potential/" + tmonomial_text(m);
        r.anchor = tag + " genus-zero potential, coefficient of " + tmonomial_text(m);
        std::vector<Insertion> ins;
        Rational sym = 1;
        for (const auto& [i, k] : m) {
            for (int j = 0; j < k; ++j) ins.push_back(t.basis.at(static_cast<size_t>(i - 1)));
            for (int j = 2; j <= k; ++j) sym *= j;
        }
        try {
            if (!degree_axiom_holds(orb, ins)) {
                r.detail = insertions_text(ins) + " violates the degree axiom";
            } else {
                std::optional<std::string> name;
                try {
                    name = find_by_insertions(orb, ins);
                } catch (const UnknownCorrelator&) {
                }
                if (!name) {
                    r.pass = true;
                    r.detail = insertions_text(ins) + " has no separate closed form; fixed by associativity";
                } else {
                    QuasiPoly diff = sub(scale(f, Surd(sym)), orb.correlator(*name).closed_form);
                    QSeries d = eval_rational(diff, trunc);
                    r.pass = d.empty();
                    r.detail = r.pass ? "equals " + *name + " below Q^" + std::to_string(trunc)
                                      : "differs from " + *name + " at Q^" +
                                            format_exponent(d.valuation_exponent());
                }
            }
        } catch (const Error& e) {
            r.detail = e.what();
        }
        out.push_back(r);
    }

    // Associativity of the quantum product, as a polynomial identity in the
    // twisted coordinates. Indices: 0 unit, 1..T twisted, T+1 divisor P.
    const size_t T = t.basis.size();
    const size_t n = static_cast<size_t>(assoc_trunc);
    const int P = static_cast<int>(T) + 1;
    SPoly F;
    for (const auto& [m, f] : t.coefficients) {
        Exps e(T, 0);
        for (const auto& [i, k] : m) e[static_cast<size_t>(i - 1)] = k;
        long prec_Q = (assoc_trunc + orb.r - 1) / orb.r + 1;
        QSeries s = substitute_power(eval_rational(f, prec_Q), orb.r, 1);
        Coeffs c(n);
        for (const auto& [k, v] : s.terms())
            if (k < assoc_trunc) c[static_cast<size_t>(k)] = v;
        accumulate(F, e, c);
    }
    std::vector<int> dual(T + 2, -1);
    for (size_t i = 0; i < T; ++i)
        for (size_t j = 0; j < T; ++j)
            if (t.basis[i].point == t.basis[j].point &&
                t.basis[i].power + t.basis[j].power == orb.order_of(t.basis[i].point))
                dual[i + 1] = static_cast<int>(j + 1);
    dual[0] = P;
    dual[static_cast<size_t>(P)] = 0;

    auto constant = [&](const Rational& v) {
        SPoly p;
        Coeffs c(n);
        c[0] = v;
        p[Exps(T, 0)] = c;
        return p;
    };
    std::map<std::vector<int>, SPoly> f3;
    auto third = [&](std::vector<int> idx) -> const SPoly& {
        std::sort(idx.begin(), idx.end());
        auto it = f3.find(idx);
        if (it != f3.end()) return it->second;
        SPoly p;
        if (idx[0] == 0) {
            int x = idx[1], y = idx[2];
            if (x == 0 && y == P) p = constant(1);
            else if (x > 0 && x < P && dual[static_cast<size_t>(x)] == y) p = constant(t.pairing);
        } else {
            p = F;
            int thetas = 0;
            for (int i : idx) {
                if (i == P) {
                    ++thetas;
                    continue;
                }
                SPoly d;
                for (const auto& [e, c] : p) {
                    int k = e[static_cast<size_t>(i - 1)];
                    if (k == 0) continue;
                    Exps e2 = e;
                    --e2[static_cast<size_t>(i - 1)];
                    Coeffs c2 = c;
                    for (auto& v : c2) v *= k;
                    accumulate(d, e2, c2);
                }
                p = std::move(d);
            }
            for (auto& [e, c] : p)
                for (size_t k = 0; k < n; ++k)
                    for (int j = 0; j < thetas; ++j) c[k] *= static_cast<long>(k);
        }
        return f3[idx] = p;
    };
    std::map<std::pair<std::pair<int, int>, std::pair<int, int>>, SPoly> mm;
    auto contract = [&](int a, int b, int c, int d) -> const SPoly& {
        auto key = std::make_pair(std::minmax(a, b), std::minmax(c, d));
        auto it = mm.find(key);
        if (it != mm.end()) return it->second;
        SPoly s;
        for (int e = 0; e <= P; ++e) {
            int f = dual[static_cast<size_t>(e)];
            const SPoly& l = third({a, b, e});
            if (l.empty()) continue;
            const SPoly& rr = third({f, c, d});
            if (rr.empty()) continue;
            Rational w = (e == 0 || e == P) ? Rational(1) : Rational(1 / t.pairing);
            for (auto& [ex, co] : product(l, rr, n)) {
                Coeffs scaled = co;
                for (auto& v : scaled) v *= w;
                accumulate(s, ex, scaled);
            }
        }
        return mm[key] = s;
    };
    CheckResult assoc;
    assoc.id = tag + "/potential/associativity";
    assoc.anchor = tag + " genus-zero potential, associativity of the quantum product";
    assoc.pass = true;
    long checked = 0;
    for (int a = 0; a <= P && assoc.pass; ++a)
        for (int b = a; b <= P && assoc.pass; ++b)
            for (int c = 0; c <= P && assoc.pass; ++c)
                for (int d = c; d <= P && assoc.pass; ++d) {
                    ++checked;
                    if (!same(contract(a, b, c, d), contract(a, c, b, d))) {
                        assoc.pass = false;
                        assoc.detail = "fails for indices (" + std::to_string(a) + "," + std::to_string(b) + "," +
                                       std::to_string(c) + "," + std::to_string(d) + ")";
                    }
                }
    if (assoc.pass)
        assoc.detail = std::to_string(checked) + " index quadruples agree below q^" + std::to_string(assoc_trunc);
    out.push_back(assoc);
    return out;
}

}  // namespace qmf
