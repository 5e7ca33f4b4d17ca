// qmf: expand generators, solve WDVV systems, run verification suites and
// tabulate Gromov-Witten invariants.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
// 3 computation error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qmf/errors.hpp"
#include "qmf/generator.hpp"
#include "qmf/modforms.hpp"
#include "qmf/verify.hpp"
#include "qmf/wdvv.hpp"

using namespace qmf;
using ojson = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string decimal(const Rational& x) {
    std::ostringstream s;
    s.precision(12);
    s << x.get_d();
    return s.str();
}

// Text rendering with an optional approximate column; machine formats never
// carry decimals.
std::string text_series(const QSeries& f, const std::string& var, bool with_decimal) {
    std::string out = to_text(f, var);
    if (!with_decimal) return out;
    out += "\n  ~ decimal:";
    for (const auto& [k, c] : f.terms())
        out += " [" + format_exponent(Rational(k, f.grid())) + "] " + decimal(c);
    return out;
}

ojson series_json(const QSeries& f) { return ojson::parse(to_json(f)); }

int cmd_expand(const std::string& id_text, long order, const std::string& format, bool with_decimal) {
    GeneratorId id = GeneratorId::parse(id_text);
    Surd scale = generator_scale(id);
    QSeries f = scale.radical().is_one() ? generator_series(id, order) : generator_normalized(id, order);
    if (format == "json") {
        if (scale.radical().is_one()) {
            std::cout << to_json(f) << "\n";
        } else {
            ojson j;
            j["scale"] = scale.to_string();
            j["normalized"] = series_json(f);
            std::cout << j.dump() << "\n";
        }
    } else {
        if (!scale.radical().is_one()) std::cout << scale.to_string() << " * (";
        std::cout << text_series(f, "Q", with_decimal);
        if (!scale.radical().is_one()) std::cout << ")";
        std::cout << "\n";
    }
    return 0;
}

int cmd_solve(const std::string& orb, const std::string& system_file, const std::string& variant, long order,
              const std::string& format, bool with_decimal) {
    OdeSystem sys = system_file.empty() ? builtin_system(orb, variant) : parse_system(read_file(system_file));
    std::map<std::string, QSeries> given;
    for (const auto& g : sys.given) given[g] = closed_form_series(sys.orbifold, g, order);
    auto solved = solve_ode(sys, order, given);
    if (format == "json") {
        ojson j;
        j["orbifold"] = sys.orbifold;
        j["variant"] = variant;
        j["order"] = order;
        ojson s;
        for (const auto& v : sys.variables()) s[v] = series_json(solved.at(v));
        j["series"] = s;
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& v : sys.variables()) std::cout << v << " = " << text_series(solved.at(v), "q", with_decimal) << "\n";
    }
    return 0;
}

int cmd_verify(const std::string& suite, const std::string& system_file, const std::string& variant, long order,
               const std::string& format) {
    SuiteReport rep;
    if (!system_file.empty()) {
        OdeSystem sys = parse_system(read_file(system_file));
        rep.suite = "system:" + system_file;
        rep.trunc = order > 0 ? order : 100;
        for (const auto& r : verify_system(sys, variant, rep.trunc))
            rep.checks.push_back({r.id, r.anchor, r.pass, r.detail});
    } else {
        if (suite.empty()) throw UsageError("verify needs --suite or --system");
        rep = run_suite(suite, order);
    }
    std::cout << (format == "text" ? rep.to_text() : rep.to_json() + "\n");
    return rep.all_pass() ? 0 : 1;
}

int cmd_table(const std::string& orb, const std::string& correlator, long max_degree, const std::string& format,
              bool with_decimal) {
    if (max_degree < 0) throw UsageError("--max-degree must be non-negative");
    const Orbifold& o = orbifold(orb);
    std::string name = correlator;
    if (!correlator.empty() && correlator.front() == '<') {
        auto found = find_by_insertions(o, parse_insertions(correlator));
        if (!found) throw UsageError(correlator + " vanishes by the degree axiom on " + o.tag);
        name = *found;
    }
    const Correlator& c = o.correlator(name);
    std::vector<Rational> values;
    QSeries f = closed_form_series(o.tag, c.name, max_degree + 1);
    for (long d = 0; d <= max_degree; ++d) values.push_back(f.coeff(Rational(d)));
    if (format == "json") {
        ojson j;
        j["orbifold"] = o.tag;
        j["correlator"] = c.name;
        j["insertions"] = insertions_text(c.insertions);
        auto arr = ojson::array();
        for (const auto& v : values) arr.push_back(to_plain(v));
        j["invariants"] = arr;
        std::cout << j.dump() << "\n";
    } else if (format == "csv") {
        std::cout << "degree,invariant\n";
        for (size_t d = 0; d < values.size(); ++d) std::cout << d << "," << to_plain(values[d]) << "\n";
    } else {
        for (size_t d = 0; d < values.size(); ++d) {
            std::cout << "q^" << d << ": " << to_plain(values[d]);
            if (with_decimal) std::cout << "  (~" << decimal(values[d]) << ")";
            std::cout << "\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quasi-modular forms and Gromov-Witten correlators of elliptic orbifold curves"};
    app.require_subcommand(1);

    long order = 0;
    bool with_decimal = false;

    auto* expand = app.add_subcommand("expand", "q-expansion of a generator such as Ei2, A@3, C@4(Q^2)");
    std::string gen_id;
    long expand_order = 10;
    std::string expand_format = "text";
    expand->add_option("id", gen_id, "generator id")->required();
    expand->add_option("--order", expand_order, "expand below Q^order")->check(CLI::NonNegativeNumber);
    expand->add_option("--format", expand_format)->check(CLI::IsMember({"json", "text"}));
    expand->add_flag("--decimal", with_decimal, "append decimal approximations (text only)");

    auto* solve = app.add_subcommand("solve", "solve a WDVV system from its boundary data");
    std::string orb = "X2", variant = "minimal", system_file;
    long solve_order = 20;
    std::string solve_format = "text";
    solve->add_option("--orbifold", orb);
    solve->add_option("--variant", variant)->check(CLI::IsMember({"minimal", "full"}));
    solve->add_option("--order", solve_order)->check(CLI::PositiveNumber);
    solve->add_option("--format", solve_format)->check(CLI::IsMember({"json", "text"}));
    solve->add_option("--system", system_file, "system file instead of a built-in system");
    solve->add_flag("--decimal", with_decimal);

    auto* verify = app.add_subcommand("verify", "run a verification suite and print its report");
    std::string suite, verify_format = "json", verify_variant = "full";
    verify->add_option("--suite", suite);
    verify->add_option("--order", order, "comparison order (default depends on the suite)");
    verify->add_option("--format", verify_format)->check(CLI::IsMember({"json", "text"}));
    verify->add_option("--system", system_file, "verify a system file against the closed forms");
    verify->add_option("--variant", verify_variant)->check(CLI::IsMember({"minimal", "full"}));

    auto* tab = app.add_subcommand("table", "Gromov-Witten invariants of one correlator, degree by degree");
    std::string tab_orb, correlator;
    long max_degree = 10;
    std::string tab_format = "csv";
    tab->add_option("--orbifold", tab_orb)->required();
    tab->add_option("--correlator", correlator, "registry name (Z4) or insertion list (<x,y,z>)")->required();
    tab->add_option("--max-degree", max_degree);
    tab->add_option("--format", tab_format)->check(CLI::IsMember({"csv", "json", "text"}));
    tab->add_flag("--decimal", with_decimal);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (const char* dir = std::getenv("QMF_CACHE_DIR")) set_generator_disk_cache(dir);

    try {
        if (*expand) return cmd_expand(gen_id, expand_order, expand_format, with_decimal);
        if (*solve) return cmd_solve(orb, system_file, variant, solve_order, solve_format, with_decimal);
        if (*verify) return cmd_verify(suite, system_file, verify_variant, order, verify_format);
        if (*tab) return cmd_table(tab_orb, correlator, max_degree, tab_format, with_decimal);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        const std::string& k = e.kind();
        if (k == "ParseError" || k == "UnsupportedOrbifold" || k == "UnknownCorrelator" || k == "UnknownSuite" ||
            k == "UnsupportedCombination")
            return 2;
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
