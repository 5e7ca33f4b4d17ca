#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "qmf/errors.hpp"
#include "qmf/verify.hpp"
#include "qmf/wdvv.hpp"

namespace qmf {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Inputs are expanded this far past the compared order so that divisions and
// theta_Q leave every compared coefficient exact.
constexpr long kMargin = 8;

}  // namespace

bool SuiteReport::all_pass() const { return failures() == 0; }

std::size_t SuiteReport::failures() const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass; }));
}

std::string SuiteReport::to_json() const {
    nlohmann::ordered_json j;
    j["suite"] = suite;
    j["trunc"] = trunc;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json e;
        e["id"] = c.id;
        e["paper_ref"] = c.paper_ref;
        e["status"] = c.pass ? "pass" : "fail";
        e["detail"] = c.detail;
        arr.push_back(std::move(e));
    }
    j["checks"] = std::move(arr);
    return j.dump(2);
}

std::string SuiteReport::to_text() const {
    std::ostringstream out;
    for (const auto& c : checks) out << (c.pass ? "PASS " : "FAIL ") << c.id << ": " << c.detail << "\n";
    out << suite << ": " << checks.size() - failures() << "/" << checks.size() << " checks pass at order " << trunc
        << "\n";
    return out.str();
}

IntegralityResult integrality_check(const QSeries& f, const Rational& scale) {
    IntegralityResult r;
    for (const auto& [k, c] : f.terms()) {
        Rational v = scale * c;
        if (!is_integer(v)) {
            r.integral = false;
            r.exponent = Rational(k, f.grid());
            r.coefficient = v;
            return r;
        }
    }
    return r;
}

std::vector<Identity> identity_table(const std::string& name) {
    if (name != "isogeny" && name != "theta" && name != "cross") throw UnknownSuite("no identity table '" + name + "'");
    std::vector<Identity> out;
    std::istringstream in(data_file("identities_" + name + ".txt"));
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        auto a = line.find('|');
        auto b = a == std::string::npos ? a : line.find('|', a + 1);
        if (b == std::string::npos)
            throw ParseError("identities_" + name + " line " + std::to_string(lineno) + ": expected 'id | ref | eq'");
        Identity id;
        id.id = trim(line.substr(0, a));
        id.paper_ref = trim(line.substr(a + 1, b - a - 1));
        id.text = trim(line.substr(b + 1));
        id.eq = parse_equation(id.text);
        out.push_back(std::move(id));
    }
    return out;
}

Check check_identity(const Identity& identity, long trunc) {
    Check c;
    c.id = identity.id;
    c.paper_ref = identity.paper_ref;
    try {
        RadSeries res = eval_series(residual_expr(identity.eq),
                                    [&](const std::string& s) { return resolve_in_Q(s, trunc + kMargin); });
        const Rational order(trunc);
        for (const auto& [rad, part] : res.parts()) {
            if (!part.exact() && part.trunc_exponent() < order) {
                c.detail = "residual only known below Q^" + format_exponent(part.trunc_exponent());
                return c;
            }
            QSeries p = part.truncate(order);
            if (!p.empty()) {
                const auto& [k, v] = p.terms().front();
                c.detail = identity.text + ": residual starts " + to_plain(v) +
                           (rad.is_one() ? "" : "*" + rad.to_string()) + "*Q^" +
                           format_exponent(Rational(k, p.grid()));
                return c;
            }
        }
        c.pass = true;
        c.detail = identity.text + " below Q^" + std::to_string(trunc);
    } catch (const Error& e) {
        c.detail = identity.text + ": " + e.what();
    }
    return c;
}

}  // namespace qmf
