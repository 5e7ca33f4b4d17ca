#pragma once

#include <functional>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "qmf/rational.hpp"
#include "qmf/surd.hpp"

namespace qmf {

// Small arithmetic language shared by closed forms, system files and the CLI:
//   numbers, names (generator ids or variables), + - * / ^, parentheses, and
//   the prefix operator `theta_q` (optionally `theta_q^k`), which binds to the
//   following factor. Exponents are rational literals: 2, -1, (1/2), (-3/2).
// A name may carry a level "@1*"; that star is part of the name, so write
// "A@1* * B@1*" for a product.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Op { Num, Name, Add, Sub, Mul, Div, Neg, Pow, Theta };
    Op op = Op::Num;
    Rational value;          // Num
    std::string name;        // Name
    Rational exponent;       // Pow
    int theta_order = 0;     // Theta
    std::vector<ExprPtr> args;
};

ExprPtr parse_expr(const std::string& text);  // throws ParseError

struct Equation {
    ExprPtr lhs;
    ExprPtr rhs;
};
Equation parse_equation(const std::string& text);  // "lhs = rhs"

// lhs - rhs as a single expression.
ExprPtr residual_expr(const Equation& eq);

std::string to_string(const ExprPtr& e);
std::set<std::string> names_in(const ExprPtr& e);
int max_theta_order(const ExprPtr& e);

ExprPtr make_num(const Rational& v);
ExprPtr make_name(const std::string& n);
ExprPtr make_binary(Expr::Op op, ExprPtr a, ExprPtr b);

using SeriesResolver = std::function<RadSeries(const std::string&)>;
// Full series semantics: division by series, fractional powers, theta_q.
// `theta_scale` multiplies each theta_q application (theta_q = r theta_Q when
// the series are in Q but derivatives are meant in q).
RadSeries eval_series(const ExprPtr& e, const SeriesResolver& resolve, const Rational& theta_scale = 1);

}  // namespace qmf
