#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qmf/expr.hpp"
#include "qmf/series.hpp"

namespace qmf {

struct Check {
    std::string id;
    std::string paper_ref;  // where the identity comes from, in words
    bool pass = false;
    std::string detail;     // first mismatch, or what was compared
};

struct SuiteReport {
    std::string suite;
    long trunc = 0;
    std::vector<Check> checks;  // sorted by id

    bool all_pass() const;
    std::size_t failures() const;
    // {"suite", "trunc", "checks": [{"id", "paper_ref", "status", "detail"}]}
    std::string to_json() const;
    std::string to_text() const;
};

std::vector<std::string> suite_names();
// Order used when the caller passes trunc <= 0.
long default_trunc(const std::string& suite);  // throws UnknownSuite
// Runs every check; a failing check never stops the suite.
SuiteReport run_suite(const std::string& name, long trunc = 0);  // throws UnknownSuite

struct IntegralityResult {
    bool integral = true;
    std::optional<Rational> exponent;  // first exponent with a non-integral coefficient
    Rational coefficient;              // scale * coefficient there
};
IntegralityResult integrality_check(const QSeries& f, const Rational& scale = 1);

// Identity tables bundled with the library: "isogeny", "theta", "cross".
struct Identity {
    std::string id;
    std::string paper_ref;
    std::string text;
    Equation eq;
};
std::vector<Identity> identity_table(const std::string& name);
// lhs - rhs as series in Q, every symbol resolved by resolve_in_Q.
Check check_identity(const Identity& identity, long trunc);

}  // namespace qmf
