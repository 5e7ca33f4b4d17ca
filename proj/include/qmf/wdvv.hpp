#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmf/expr.hpp"
#include "qmf/quasipoly.hpp"
#include "qmf/series.hpp"

namespace qmf {

// Text of a bundled data file (data/*.txt, compiled in). Throws Error.
const std::string& data_file(const std::string& name);

// x^k at an orbifold point.
struct Insertion {
    char point = 'x';
    int power = 1;
    bool operator==(const Insertion&) const = default;
    auto operator<=>(const Insertion&) const = default;
};
// "<x,x^3,z,z>" or "x,x^3,z,z".
std::vector<Insertion> parse_insertions(const std::string& text);
std::string insertions_text(const std::vector<Insertion>& ins);

struct Correlator {
    std::string name;
    std::vector<Insertion> insertions;
    int genus = 0;
    int divisors = 0;          // insertions of P
    std::string source;        // closed form as written in the registry
    QuasiPoly closed_form;     // in generators of Q only
    int twisted() const { return static_cast<int>(insertions.size()); }
    // T + 2D + 2g - 2.
    int expected_weight() const { return twisted() + 2 * divisors + 2 * genus - 2; }
};

struct OrbifoldPoint {
    char label;
    int order;
};

struct Orbifold {
    std::string tag;   // X1, X2, X3, X4, X6
    int r = 1;
    int mu = 2;
    int level = 0;     // level of the modular group; 1 stands for 1*, 0 for none
    std::vector<OrbifoldPoint> points;
    std::vector<Correlator> correlators;

    int order_of(char point) const;
    const Correlator& correlator(const std::string& name) const;  // throws UnknownCorrelator
    bool has_correlator(const std::string& name) const;
};

const Orbifold& orbifold(const std::string& tag);  // throws UnsupportedOrbifold
std::vector<std::string> orbifold_tags();          // X1 X2 X3 X4 X6

// Sum of insertion degrees equals n - 2 (every other twisted correlator
// vanishes).
bool degree_axiom_holds(const Orbifold& orb, const std::vector<Insertion>& ins);
// Registered correlator with these insertions, up to reordering and
// permutations of points of equal order. Empty when the degree axiom forces
// zero; throws UnknownCorrelator when nothing matches.
std::optional<std::string> find_by_insertions(const Orbifold& orb, const std::vector<Insertion>& ins);

// Closed form as a series in Q, known below Q^prec.
QSeries closed_form_Q(const std::string& orb, const std::string& name, long prec);
// Same correlator in the orbifold variable q = Q^{1/r}, known below q^trunc.
QSeries closed_form_series(const std::string& orb, const std::string& name, long trunc);
// Coefficient of q^d.
Rational gw_invariant(const std::string& orb, const std::string& name, long d);

// Expression over the orbifold's correlator names (and "<...>" insertion
// lists) evaluated as a series in q, exact below q^trunc.
QSeries evaluate_q(const std::string& orb, const std::string& expr, long trunc);

// Resolves "X2.X", "X6<x,x,x^4>" and plain generator ids to series in Q.
RadSeries resolve_in_Q(const std::string& symbol, long prec);

struct Seed {
    std::string var;
    std::map<long, Rational> coeffs;  // nonzero coefficients below `known`
    long known = 0;                   // every coefficient below q^known is fixed
};

struct LabeledEquation {
    std::string label;
    std::string text;
    Equation eq;
};

// WDVV system in q. `solve` equations drive the solver, `check` equations are
// the remaining printed ones, `relations` are derivative-free identities and
// `derived` are consequences worth reporting but not printed as WDVV
// equations.
struct OdeSystem {
    std::string orbifold;
    std::vector<std::string> unknowns;
    std::vector<std::string> given;  // supplied by the caller, not solved for
    std::vector<Seed> seeds;
    std::vector<std::pair<std::string, ExprPtr>> defines;
    std::vector<LabeledEquation> solve;
    std::vector<LabeledEquation> check;
    std::vector<LabeledEquation> relations;
    std::vector<LabeledEquation> derived;

    // Every variable the system talks about (unknowns then defines).
    std::vector<std::string> variables() const;
    // Equations relevant to a variant: minimal = solve; full = everything printed.
    std::vector<LabeledEquation> equations(const std::string& variant) const;
};

OdeSystem parse_system(const std::string& text);  // throws ParseError
// variant is "minimal" or "full"; both share unknowns, seeds and solver
// equations, the full one also carries every printed equation.
OdeSystem builtin_system(const std::string& orbifold, const std::string& variant = "full");
OdeSystem nonbasic_system();

// Series for unknowns and defines below q^trunc. Throws ResonantOrder,
// SeedInconsistency.
std::map<std::string, QSeries> solve_ode(const OdeSystem& sys, long trunc,
                                         const std::map<std::string, QSeries>& given = {});

struct CheckResult {
    std::string id;
    std::string anchor;
    bool pass = false;
    std::string detail;
};

// Residual of every equation on the closed forms, plus solver agreement.
std::vector<CheckResult> verify_system(const OdeSystem& sys, const std::string& variant, long trunc);
std::vector<CheckResult> verify_system(const std::string& orbifold, const std::string& variant, long trunc);
std::vector<CheckResult> verify_polynomial_relations(const std::string& orbifold, long trunc);
// Residual of lhs - rhs in q with closed forms for every correlator name.
CheckResult check_equation(const std::string& orbifold, const LabeledEquation& eq, long trunc);

// Potential tables. Monomials are keyed by coordinate index (t1 -> 1, ...).
using TMonomial = std::map<int, int>;
struct PotentialTable {
    std::string orbifold;
    std::vector<Insertion> basis;  // t_i -> basis[i-1]
    Rational pairing;              // <a, dual a>
    std::map<TMonomial, QuasiPoly> coefficients;
};
const PotentialTable& potential_table(const std::string& orbifold);  // X2, X3
std::map<TMonomial, QuasiPoly> potential_coefficients(const std::string& orbifold);
// Coefficient checks against the registry plus associativity of the whole
// potential (series truncated at q^assoc_trunc).
std::vector<CheckResult> verify_potential(const std::string& orbifold, long trunc, long assoc_trunc);

}  // namespace qmf
