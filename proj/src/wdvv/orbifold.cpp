#include <algorithm>
#include <charconv>
#include <functional>
#include <numeric>
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

// Replaces correlator names by their own closed forms until only generators
// remain.
QuasiPoly expand_names(const QuasiPoly& p, const std::function<QuasiPoly(const std::string&)>& lookup) {
    QuasiPoly out;
    for (const auto& [key, c] : p.terms()) {
        QuasiPoly term = QuasiPoly::constant(Surd(c, key.second));
        for (const auto& [s, k] : key.first) {
            QuasiPoly f = GeneratorId::looks_like(s) ? QuasiPoly::symbol(s) : lookup(s);
            term = mul(term, pow(f, static_cast<unsigned>(k)));
        }
        out = add(out, term);
    }
    return out;
}

void load_registry(Orbifold& orb, const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::map<std::string, QuasiPoly> raw;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("points ", 0) == 0) {
            std::istringstream ps(line.substr(7));
            std::string tok;
            while (ps >> tok) {
                auto colon = tok.find(':');
                if (colon != 1) throw ParseError("bad point '" + tok + "'");
                orb.points.push_back({tok[0], std::stoi(tok.substr(2))});
            }
            continue;
        }
        auto eq = line.find('=');
        auto open = line.find('<');
        auto close = line.find('>');
        if (eq == std::string::npos || open == std::string::npos || close == std::string::npos || close > eq)
            throw ParseError("bad registry line '" + line + "'");
        Correlator c;
        c.name = trim(line.substr(0, open));
        c.insertions = parse_insertions(line.substr(open, close - open + 1));
        c.source = trim(line.substr(eq + 1));
        raw[c.name] = QuasiPoly::parse(c.source);
        orb.correlators.push_back(std::move(c));
    }
    std::map<std::string, QuasiPoly> done;
    std::set<std::string> active;
    std::function<QuasiPoly(const std::string&)> resolve = [&](const std::string& name) -> QuasiPoly {
        if (auto it = done.find(name); it != done.end()) return it->second;
        auto it = raw.find(name);
        if (it == raw.end()) throw UnknownCorrelator(name + " in " + orb.tag + " registry");
        if (!active.insert(name).second) throw ParseError("cyclic closed form for " + name);
        QuasiPoly p = expand_names(it->second, resolve);
        active.erase(name);
        return done[name] = p;
    };
    for (auto& c : orb.correlators) c.closed_form = resolve(c.name);
}

std::map<std::string, Orbifold> build_all() {
    std::map<std::string, Orbifold> out;
    auto make = [&](const std::string& tag, int r, int mu, int level) {
        Orbifold o;
        o.tag = tag;
        o.r = r;
        o.mu = mu;
        o.level = level;
        if (r > 1) load_registry(o, data_file("correlators_" + tag + ".txt"));
        out.emplace(tag, std::move(o));
    };
    make("X1", 1, 2, 0);
    make("X2", 2, 6, 4);
    make("X3", 3, 8, 3);
    make("X4", 4, 9, 2);
    make("X6", 6, 10, 1);
    return out;
}

}  // namespace

std::vector<Insertion> parse_insertions(const std::string& text) {
    std::string body = trim(text);
    const bool opened = !body.empty() && body.front() == '<';
    const bool closed = !body.empty() && body.back() == '>';
    if (opened != closed) throw ParseError("unbalanced brackets in '" + text + "'");
    if (opened) body = body.substr(1, body.size() - 2);
    std::vector<Insertion> out;
    // Split by hand: getline would swallow a trailing empty entry.
    for (std::size_t start = 0;;) {
        std::size_t comma = body.find(',', start);
        std::string tok = trim(body.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
        if (tok.empty() || !std::isalpha(static_cast<unsigned char>(tok[0])))
            throw ParseError("bad insertion '" + tok + "' in '" + text + "'");
        Insertion ins{tok[0], 1};
        if (tok.size() > 1) {
            if (tok[1] != '^' || tok.size() < 3) throw ParseError("bad insertion '" + tok + "'");
            const char* end = tok.data() + tok.size();
            auto [ptr, ec] = std::from_chars(tok.data() + 2, end, ins.power);
            if (ec != std::errc() || ptr != end || ins.power < 1) throw ParseError("bad insertion '" + tok + "'");
        }
        out.push_back(ins);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (out.empty()) throw ParseError("no insertions in '" + text + "'");
    return out;
}

std::string insertions_text(const std::vector<Insertion>& ins) {
    std::string out = "<";
    for (size_t i = 0; i < ins.size(); ++i) {
        if (i) out += ",";
        out += ins[i].point;
        if (ins[i].power != 1) out += "^" + std::to_string(ins[i].power);
    }
    return out + ">";
}

int Orbifold::order_of(char point) const {
    for (const auto& p : points)
        if (p.label == point) return p.order;
    throw UnknownCorrelator(std::string("no orbifold point '") + point + "' on " + tag);
}

bool Orbifold::has_correlator(const std::string& name) const {
    return std::any_of(correlators.begin(), correlators.end(), [&](const Correlator& c) { return c.name == name; });
}

const Correlator& Orbifold::correlator(const std::string& name) const {
    for (const auto& c : correlators)
        if (c.name == name) return c;
    throw UnknownCorrelator(name + " on " + tag);
}

const Orbifold& orbifold(const std::string& tag) {
    static const std::map<std::string, Orbifold> all = build_all();
    auto it = all.find(tag);
    if (it == all.end()) throw UnsupportedOrbifold("'" + tag + "' (expected X1, X2, X3, X4 or X6)");
    return it->second;
}

std::vector<std::string> orbifold_tags() { return {"X1", "X2", "X3", "X4", "X6"}; }

bool degree_axiom_holds(const Orbifold& orb, const std::vector<Insertion>& ins) {
    Rational sum = 0;
    for (const auto& i : ins) {
        int order = orb.order_of(i.point);
        if (i.power < 1 || i.power >= order) return false;
        sum += frac(i.power, order);
    }
    return sum == static_cast<long>(ins.size()) - 2;
}

std::optional<std::string> find_by_insertions(const Orbifold& orb, const std::vector<Insertion>& ins) {
    if (!degree_axiom_holds(orb, ins)) return std::nullopt;
    auto sorted = [](std::vector<Insertion> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    // Relabelings of points that preserve isotropy orders.
    std::vector<size_t> perm(orb.points.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool valid = true;
        for (size_t i = 0; i < perm.size(); ++i)
            if (orb.points[i].order != orb.points[perm[i]].order) valid = false;
        if (!valid) continue;
        std::vector<Insertion> moved;
        for (const auto& x : ins) {
            size_t idx = 0;
            while (orb.points[idx].label != x.point) ++idx;
            moved.push_back({orb.points[perm[idx]].label, x.power});
        }
        moved = sorted(moved);
        for (const auto& c : orb.correlators)
            if (sorted(c.insertions) == moved) return c.name;
    } while (std::next_permutation(perm.begin(), perm.end()));
    throw UnknownCorrelator(insertions_text(ins) + " is not registered for " + orb.tag);
}

}  // namespace qmf
