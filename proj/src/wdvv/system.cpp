#include <set>
#include <sstream>

#include "qmf/errors.hpp"
#include "qmf/wdvv.hpp"

namespace qmf {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> words(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

// "q + 4*q^3 + O(q^5)"; O(q) means O(q^1).
Seed parse_seed(const std::string& var, const std::string& text) {
    Seed seed;
    seed.var = var;
    auto big_o = text.find("O(q");
    if (big_o == std::string::npos) throw ParseError("seed for " + var + " needs an O(q^k) term: '" + text + "'");
    auto close = text.find(')', big_o);
    if (close == std::string::npos) throw ParseError("unterminated O(q^k) in '" + text + "'");
    std::string power = text.substr(big_o + 3, close - big_o - 3);
    if (power.empty())
        seed.known = 1;
    else if (power[0] == '^')
        seed.known = std::stol(power.substr(1));
    else
        throw ParseError("bad O-term in '" + text + "'");
    std::string poly = trim(text.substr(0, big_o));
    if (!poly.empty() && poly.back() == '+') poly = trim(poly.substr(0, poly.size() - 1));
    if (poly.empty()) return seed;
    const QuasiPoly parsed = QuasiPoly::parse(poly);
    for (const auto& [key, c] : parsed.terms()) {
        const auto& [m, rad] = key;
        if (!rad.is_one()) throw ParseError("irrational seed coefficient in '" + text + "'");
        long k = 0;
        for (const auto& [s, e] : m) {
            if (s != "q") throw ParseError("seed polynomial must be in q: '" + text + "'");
            k = e;
        }
        if (k >= seed.known) throw ParseError("seed term q^" + std::to_string(k) + " beyond its O-term");
        seed.coeffs[k] = c;
    }
    return seed;
}

LabeledEquation parse_labeled(const std::string& rest) {
    auto colon = rest.find(':');
    if (colon == std::string::npos) throw ParseError("expected 'label: equation' in '" + rest + "'");
    LabeledEquation le;
    le.label = trim(rest.substr(0, colon));
    le.text = trim(rest.substr(colon + 1));
    le.eq = parse_equation(le.text);
    return le;
}

}  // namespace

OdeSystem parse_system(const std::string& text) {
    OdeSystem sys;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        auto space = line.find(' ');
        std::string head = line.substr(0, space);
        std::string rest = space == std::string::npos ? "" : trim(line.substr(space + 1));
        try {
            if (head == "orbifold") {
                sys.orbifold = rest;
            } else if (head == "unknowns") {
                sys.unknowns = words(rest);
            } else if (head == "given") {
                sys.given = words(rest);
            } else if (head == "seed") {
                auto eq = rest.find('=');
                if (eq == std::string::npos) throw ParseError("expected 'seed NAME = ...'");
                sys.seeds.push_back(parse_seed(trim(rest.substr(0, eq)), rest.substr(eq + 1)));
            } else if (head == "define") {
                auto eq = rest.find('=');
                if (eq == std::string::npos) throw ParseError("expected 'define NAME = ...'");
                sys.defines.emplace_back(trim(rest.substr(0, eq)), parse_expr(rest.substr(eq + 1)));
            } else if (head == "solve") {
                sys.solve.push_back(parse_labeled(rest));
            } else if (head == "check") {
                sys.check.push_back(parse_labeled(rest));
            } else if (head == "relation") {
                sys.relations.push_back(parse_labeled(rest));
            } else if (head == "derived") {
                sys.derived.push_back(parse_labeled(rest));
            } else {
                throw ParseError("unknown directive '" + head + "'");
            }
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (sys.unknowns.empty()) throw ParseError("system declares no unknowns");
    if (sys.solve.empty()) throw ParseError("system has no solve equations");
    return sys;
}

std::vector<std::string> OdeSystem::variables() const {
    std::vector<std::string> out = unknowns;
    for (const auto& [name, e] : defines) out.push_back(name);
    return out;
}

std::vector<LabeledEquation> OdeSystem::equations(const std::string& variant) const {
    std::vector<LabeledEquation> out;
    if (variant == "minimal") {
        out = solve;
    } else if (variant == "full") {
        std::set<std::string> seen;
        for (const auto& e : check) {
            out.push_back(e);
            seen.insert(e.label);
        }
        for (const auto& e : solve)
            if (!seen.count(e.label)) out.push_back(e);
        out.insert(out.end(), relations.begin(), relations.end());
        out.insert(out.end(), derived.begin(), derived.end());
    } else {
        throw ParseError("unknown variant '" + variant + "' (expected minimal or full)");
    }
    for (const auto& [name, e] : defines) {
        LabeledEquation le;
        le.label = "define-" + name;
        le.text = name + " = " + to_string(e);
        le.eq = {make_name(name), e};
        out.push_back(std::move(le));
    }
    return out;
}

OdeSystem builtin_system(const std::string& orb, const std::string& variant) {
    const Orbifold& o = orbifold(orb);
    if (o.tag == "X1") throw UnsupportedOrbifold("X1 has no WDVV system");
    if (variant != "minimal" && variant != "full")
        throw ParseError("unknown variant '" + variant + "' (expected minimal or full)");
    static const std::map<std::string, OdeSystem> parsed = [] {
        std::map<std::string, OdeSystem> m;
        for (const char* tag : {"X2", "X3", "X4", "X6"})
            m.emplace(tag, parse_system(data_file(std::string("system_") + tag + ".txt")));
        return m;
    }();
    OdeSystem sys = parsed.at(o.tag);
    if (variant == "minimal") {
        sys.check.clear();
        sys.relations.clear();
        sys.derived.clear();
    }
    return sys;
}

OdeSystem nonbasic_system() { return parse_system(data_file("system_X4_nonbasic.txt")); }

}  // namespace qmf
