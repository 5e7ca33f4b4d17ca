#pragma once

#include <map>
#include <set>
#include <string>

#include "qmf/expr.hpp"
#include "qmf/surd.hpp"

namespace qmf {

// Symbol -> positive exponent. Generator ids are stored in canonical text
// form; any other identifier (a correlator name, say) is kept verbatim.
using Monomial = std::map<std::string, int>;

// Polynomial with surd coefficients. Terms are keyed by (monomial, radical
// class) so that 2^(1/2)*A@4*C@2 stays exact.
class QuasiPoly {
public:
    using Key = std::pair<Monomial, Radical>;

    QuasiPoly() = default;
    static QuasiPoly constant(const Surd& c);
    static QuasiPoly symbol(const std::string& name);
    // Polynomial subset of the expression language: division only by
    // constants, fractional powers only of constants, no theta_q.
    static QuasiPoly from_expr(const ExprPtr& e);
    static QuasiPoly parse(const std::string& text);

    const std::map<Key, Rational>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const;
    Surd constant_value() const;  // throws EvaluationError unless a single constant term
    std::set<std::string> symbols() const;

    // Sum of doubled factor weights, common to all monomials.
    int doubled_weight() const;
    Rational weight() const;

    QuasiPoly partial(const std::string& symbol) const;
    // Derivative along the single E-type generator present (zero if none).
    QuasiPoly partial_E() const;

    std::string to_string() const;
    bool operator==(const QuasiPoly& o) const { return terms_ == o.terms_; }

    friend QuasiPoly add(const QuasiPoly&, const QuasiPoly&);
    friend QuasiPoly mul(const QuasiPoly&, const QuasiPoly&);
    friend QuasiPoly scale(const QuasiPoly&, const Surd&);

private:
    void insert(const Monomial& m, const Surd& c);
    std::map<Key, Rational> terms_;
};

QuasiPoly add(const QuasiPoly& a, const QuasiPoly& b);
QuasiPoly sub(const QuasiPoly& a, const QuasiPoly& b);
QuasiPoly mul(const QuasiPoly& a, const QuasiPoly& b);
QuasiPoly scale(const QuasiPoly& a, const Surd& c);
QuasiPoly pow(const QuasiPoly& a, unsigned n);

// Canonical spelling of a symbol (generator ids normalized).
std::string canonical_symbol(const std::string& name);

// Generators are expanded to Q^prec; other symbols go through `resolve`.
RadSeries eval(const QuasiPoly& p, long prec);
RadSeries eval(const QuasiPoly& p, const SeriesResolver& resolve);
// Throws IrrationalSeries if radicals fail to cancel.
QSeries eval_rational(const QuasiPoly& p, long prec);

}  // namespace qmf
