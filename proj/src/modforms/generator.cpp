#include "qmf/generator.hpp"

#include <map>

#include "qmf/errors.hpp"

namespace qmf {

LevelInfo level_info(int level) {
    switch (level) {
        case 1: return {1, 6, 432};
        case 2: return {2, 4, 64};
        case 3: return {3, 3, 27};
        case 4: return {4, 2, 16};
        default: throw UnsupportedCombination("no level " + std::to_string(level));
    }
}

std::string level_name(int level) { return level == 1 ? "1*" : std::to_string(level); }

namespace {

const std::map<std::string, GenKind>& plain_kinds() {
    static const std::map<std::string, GenKind> m = {
        {"eta", GenKind::Eta},     {"theta2", GenKind::Theta2}, {"theta3", GenKind::Theta3},
        {"theta4", GenKind::Theta4}, {"Ei2", GenKind::Ei2},     {"Ei4", GenKind::Ei4},
        {"Ei6", GenKind::Ei6},     {"thetaA2", GenKind::ThetaA2}};
    return m;
}

const std::map<std::string, GenKind>& level_kinds() {
    static const std::map<std::string, GenKind> m = {
        {"A", GenKind::A}, {"B", GenKind::B}, {"C", GenKind::C}, {"E", GenKind::E}};
    return m;
}

std::string kind_name(GenKind k) {
    for (const auto& [n, v] : plain_kinds())
        if (v == k) return n;
    for (const auto& [n, v] : level_kinds())
        if (v == k) return n;
    return "theta";
}

Rational reduce_mod1(const Rational& x) { return x - floor_of(x); }

}  // namespace

GeneratorId GeneratorId::parse(const std::string& text) {
    auto fail = [&](const std::string& why) { return ParseError("generator id '" + text + "': " + why); };
    std::string s = text;
    GeneratorId id;
    // Trailing argument "(Q^m)".
    auto open = s.find("(Q");
    if (open != std::string::npos) {
        if (s.back() != ')') throw fail("unterminated argument");
        std::string inner = s.substr(open + 2, s.size() - open - 3);
        s = s.substr(0, open);
        if (inner.empty()) {
            id.arg = 1;
        } else {
            if (inner[0] != '^') throw fail("expected '^' after Q");
            inner.erase(0, 1);
            if (inner.size() > 2 && inner.front() == '(' && inner.back() == ')') inner = inner.substr(1, inner.size() - 2);
            id.arg = parse_rational(inner);
            if (sgn(id.arg) <= 0) throw fail("argument power must be positive");
        }
    }
    auto at = s.find('@');
    auto brace = s.find('{');
    if (at != std::string::npos) {
        std::string name = s.substr(0, at), lvl = s.substr(at + 1);
        auto it = level_kinds().find(name);
        if (it == level_kinds().end()) throw fail("unknown level generator");
        id.kind = it->second;
        if (lvl == "1*")
            id.level = 1;
        else if (lvl == "2" || lvl == "3" || lvl == "4")
            id.level = lvl[0] - '0';
        else
            throw fail("level must be 1*, 2, 3 or 4");
        return id;
    }
    if (brace != std::string::npos) {
        if (s.substr(0, brace) != "theta" || s.back() != '}') throw fail("malformed characteristic");
        std::string inner = s.substr(brace + 1, s.size() - brace - 2);
        auto comma = inner.find(',');
        if (comma == std::string::npos) throw fail("characteristic needs two entries");
        id.kind = GenKind::ThetaChar;
        id.a = reduce_mod1(parse_rational(inner.substr(0, comma)));
        id.b = parse_rational(inner.substr(comma + 1));
        if (sgn(id.b) < 0 || id.b >= 1) throw UnsupportedCombination("characteristic b must lie in [0,1)");
        return id;
    }
    auto it = plain_kinds().find(s);
    if (it == plain_kinds().end()) throw fail("unknown generator");
    id.kind = it->second;
    return id;
}

bool GeneratorId::looks_like(const std::string& text) noexcept {
    try {
        parse(text);
        return true;
    } catch (...) {
        return false;
    }
}

std::string GeneratorId::to_string() const {
    std::string out = kind_name(kind);
    if (kind == GenKind::A || kind == GenKind::B || kind == GenKind::C || kind == GenKind::E)
        out += "@" + level_name(level);
    if (kind == GenKind::ThetaChar) out += "{" + to_plain(a) + "," + to_plain(b) + "}";
    if (arg != 1) out += "(Q^" + to_plain(arg) + ")";
    return out;
}

GeneratorId GeneratorId::at_base() const {
    GeneratorId out = *this;
    out.arg = 1;
    return out;
}

int GeneratorId::doubled_weight() const {
    switch (kind) {
        case GenKind::Eta:
        case GenKind::Theta2:
        case GenKind::Theta3:
        case GenKind::Theta4:
        case GenKind::ThetaChar: return 1;
        case GenKind::ThetaA2:
        case GenKind::A:
        case GenKind::B:
        case GenKind::C: return 2;
        case GenKind::Ei2:
        case GenKind::E: return 4;
        case GenKind::Ei4: return 8;
        case GenKind::Ei6: return 12;
    }
    return 0;
}

}  // namespace qmf
