#include <map>
#include <optional>

#include "qmf/errors.hpp"
#include "qmf/wdvv.hpp"

namespace qmf {

namespace {

// Order-by-order solver. Every expression is compiled into a DAG whose nodes
// keep their q-coefficients. At order n each node's coefficient is affine in
// the unknown coefficients c_n: value = base + grad . c_n. The solve equations
// then give a square (or overdetermined) linear system for c_n.
struct Node {
    enum class Kind { Const, Var, Given, Add, Sub, Scale, Mul, Theta } kind = Kind::Const;
    int a = -1;
    int b = -1;
    int var = -1;
    int theta_order = 0;
    Rational value;               // Const value or Scale factor
    std::vector<Rational> coef;   // finalized coefficients; coef[n] holds the base while solving order n
    std::vector<Rational> grad;   // derivative along the free unknowns of the current order
    bool depends = false;         // grad nonzero
};

class Compiler {
public:
    Compiler(const OdeSystem& sys, const std::map<std::string, QSeries>& given, long trunc) {
        for (size_t i = 0; i < sys.unknowns.size(); ++i) vars_[sys.unknowns[i]] = static_cast<int>(i);
        for (const auto& [name, e] : sys.defines) defines_[name] = e;
        for (const auto& name : sys.given) {
            auto it = given.find(name);
            if (it == given.end()) throw EvaluationError("system needs the series '" + name + "'");
            if (it->second.grid() != 1 || it->second.trunc() < trunc)
                throw InsufficientTruncation("given series '" + name + "' must be integral in q and known below q^" +
                                             std::to_string(trunc));
            Node n;
            n.kind = Node::Kind::Given;
            n.coef.assign(static_cast<size_t>(trunc), Rational(0));
            for (const auto& [k, c] : it->second.terms())
                if (k < trunc) n.coef[static_cast<size_t>(k)] = c;
            named_[name] = push(std::move(n));
        }
    }

    int name(const std::string& s) {
        if (auto it = named_.find(s); it != named_.end()) return it->second;
        int id;
        if (auto v = vars_.find(s); v != vars_.end()) {
            Node n;
            n.kind = Node::Kind::Var;
            n.var = v->second;
            id = push(std::move(n));
        } else if (auto d = defines_.find(s); d != defines_.end()) {
            if (!active_.insert(s).second) throw ParseError("cyclic definition of " + s);
            id = compile(d->second);
            active_.erase(s);
        } else {
            throw EvaluationError("unbound name '" + s + "' in system");
        }
        return named_[s] = id;
    }

    int compile(const ExprPtr& e) {
        switch (e->op) {
            case Expr::Op::Num: return constant(e->value);
            case Expr::Op::Name: return name(e->name);
            case Expr::Op::Add: return binary(Node::Kind::Add, compile(e->args[0]), compile(e->args[1]));
            case Expr::Op::Sub: return binary(Node::Kind::Sub, compile(e->args[0]), compile(e->args[1]));
            case Expr::Op::Mul: return multiply(compile(e->args[0]), compile(e->args[1]));
            case Expr::Op::Neg: return scale(compile(e->args[0]), Rational(-1));
            case Expr::Op::Div: {
                int d = compile(e->args[1]);
                if (nodes_[d].kind != Node::Kind::Const)
                    throw EvaluationError("system equations may only divide by constants: " + to_string(e));
                if (nodes_[d].value == 0) throw DivisionByZeroSeries("division by zero in " + to_string(e));
                return scale(compile(e->args[0]), Rational(1 / nodes_[d].value));
            }
            case Expr::Op::Pow: {
                int base = compile(e->args[0]);
                const Rational& x = e->exponent;
                if (nodes_[base].kind == Node::Kind::Const) {
                    Surd s = Surd::power(nodes_[base].value, x);
                    if (!s.radical().is_one()) throw EvaluationError("irrational constant in " + to_string(e));
                    return constant(s.coeff());
                }
                if (!is_integer(x) || sgn(x) < 0)
                    throw EvaluationError("system powers must be non-negative integers: " + to_string(e));
                long k = x.get_num().get_si();
                int out = constant(1);
                int sq = base;
                while (k > 0) {
                    if (k & 1) out = multiply(out, sq);
                    k >>= 1;
                    if (k > 0) sq = multiply(sq, sq);
                }
                return out;
            }
            case Expr::Op::Theta: {
                int a = compile(e->args[0]);
                if (nodes_[a].kind == Node::Kind::Const) return constant(0);
                Node n;
                n.kind = Node::Kind::Theta;
                n.a = a;
                n.theta_order = e->theta_order;
                return push(std::move(n));
            }
        }
        throw EvaluationError("unknown expression node");
    }

    std::vector<Node>& nodes() { return nodes_; }

private:
    int push(Node n) {
        nodes_.push_back(std::move(n));
        return static_cast<int>(nodes_.size()) - 1;
    }
    int constant(const Rational& v) {
        Node n;
        n.value = v;
        return push(std::move(n));
    }
    bool is_const(int i) const { return nodes_[i].kind == Node::Kind::Const; }
    int binary(Node::Kind k, int a, int b) {
        if (is_const(a) && is_const(b))
            return constant(k == Node::Kind::Add ? Rational(nodes_[a].value + nodes_[b].value)
                                                 : Rational(nodes_[a].value - nodes_[b].value));
        Node n;
        n.kind = k;
        n.a = a;
        n.b = b;
        return push(std::move(n));
    }
    int scale(int a, const Rational& c) {
        if (is_const(a)) return constant(nodes_[a].value * c);
        if (c == 1) return a;
        Node n;
        n.kind = Node::Kind::Scale;
        n.a = a;
        n.value = c;
        return push(std::move(n));
    }
    int multiply(int a, int b) {
        if (is_const(a)) return scale(b, nodes_[a].value);
        if (is_const(b)) return scale(a, nodes_[b].value);
        Node n;
        n.kind = Node::Kind::Mul;
        n.a = a;
        n.b = b;
        return push(std::move(n));
    }

    std::vector<Node> nodes_;
    std::map<std::string, int> vars_;
    std::map<std::string, ExprPtr> defines_;
    std::map<std::string, int> named_;
    std::set<std::string> active_;
};

std::string residual_text(const Rational& v, long n) { return to_plain(v) + "*q^" + std::to_string(n); }

// Solves grad_rows . c = rhs; returns nullopt when rank-deficient.
std::optional<std::vector<Rational>> solve_linear(std::vector<std::vector<Rational>> rows, std::vector<Rational> rhs,
                                                  size_t m) {
    std::vector<size_t> pivot_row;
    size_t r = 0;
    for (size_t col = 0; col < m; ++col) {
        size_t p = r;
        while (p < rows.size() && rows[p][col] == 0) ++p;
        if (p == rows.size()) return std::nullopt;
        std::swap(rows[p], rows[r]);
        std::swap(rhs[p], rhs[r]);
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][col] == 0) continue;
            Rational f = rows[i][col] / rows[r][col];
            for (size_t j = col; j < m; ++j) rows[i][j] -= f * rows[r][j];
            rhs[i] -= f * rhs[r];
        }
        pivot_row.push_back(r);
        ++r;
    }
    std::vector<Rational> c(m);
    for (size_t col = 0; col < m; ++col) c[col] = rhs[pivot_row[col]] / rows[pivot_row[col]][col];
    return c;
}

}  // namespace

std::map<std::string, QSeries> solve_ode(const OdeSystem& sys, long trunc, const std::map<std::string, QSeries>& given) {
    if (trunc < 1) throw EvaluationError("solver truncation must be positive");
    Compiler comp(sys, given, trunc);
    std::vector<std::pair<std::string, int>> rows;
    for (const auto& le : sys.solve) rows.emplace_back(le.label, comp.compile(residual_expr(le.eq)));
    std::vector<std::pair<std::string, int>> outputs;
    for (const auto& v : sys.variables()) outputs.emplace_back(v, comp.name(v));
    std::vector<std::pair<const Seed*, int>> seeded;
    std::vector<const Seed*> var_seed(sys.unknowns.size(), nullptr);
    for (const auto& s : sys.seeds) {
        int node = comp.name(s.var);
        seeded.emplace_back(&s, node);
        for (size_t i = 0; i < sys.unknowns.size(); ++i)
            if (sys.unknowns[i] == s.var) var_seed[i] = &s;
    }
    std::vector<Node>& nodes = comp.nodes();

    for (long n = 0; n < trunc; ++n) {
        // Columns: unknowns whose q^n coefficient is not fixed by a seed.
        std::vector<int> column(sys.unknowns.size(), -1);
        size_t m = 0;
        for (size_t i = 0; i < sys.unknowns.size(); ++i)
            if (!var_seed[i] || n >= var_seed[i]->known) column[i] = static_cast<int>(m++);

        const size_t un = static_cast<size_t>(n);
        for (auto& nd : nodes) {
            if (nd.kind == Node::Kind::Given) continue;
            Rational base = 0;
            nd.grad.assign(m, Rational(0));
            nd.depends = false;
            auto take_grad = [&](const Node& src, const Rational& f) {
                if (!src.depends || f == 0) return;
                for (size_t j = 0; j < m; ++j) nd.grad[j] += f * src.grad[j];
                nd.depends = true;
            };
            switch (nd.kind) {
                case Node::Kind::Const:
                    if (n == 0) base = nd.value;
                    break;
                case Node::Kind::Var: {
                    int col = column[static_cast<size_t>(nd.var)];
                    if (col < 0) {
                        auto it = var_seed[static_cast<size_t>(nd.var)]->coeffs.find(n);
                        if (it != var_seed[static_cast<size_t>(nd.var)]->coeffs.end()) base = it->second;
                    } else {
                        nd.grad[static_cast<size_t>(col)] = 1;
                        nd.depends = true;
                    }
                    break;
                }
                case Node::Kind::Add:
                case Node::Kind::Sub: {
                    const Node& a = nodes[static_cast<size_t>(nd.a)];
                    const Node& b = nodes[static_cast<size_t>(nd.b)];
                    Rational sign = nd.kind == Node::Kind::Add ? 1 : -1;
                    base = a.coef[un] + sign * b.coef[un];
                    take_grad(a, 1);
                    take_grad(b, sign);
                    break;
                }
                case Node::Kind::Scale: {
                    const Node& a = nodes[static_cast<size_t>(nd.a)];
                    base = nd.value * a.coef[un];
                    take_grad(a, nd.value);
                    break;
                }
                case Node::Kind::Mul: {
                    const Node& a = nodes[static_cast<size_t>(nd.a)];
                    const Node& b = nodes[static_cast<size_t>(nd.b)];
                    for (size_t i = 0; i <= un; ++i) base += a.coef[i] * b.coef[un - i];
                    if (n == 0 && a.depends && b.depends)
                        throw EvaluationError("order 0 is nonlinear in the unknowns; seed every unknown at q^0");
                    take_grad(a, b.coef[0]);
                    take_grad(b, a.coef[0]);
                    break;
                }
                case Node::Kind::Theta: {
                    const Node& a = nodes[static_cast<size_t>(nd.a)];
                    Rational f = 1;
                    for (int k = 0; k < nd.theta_order; ++k) f *= n;
                    base = f * a.coef[un];
                    take_grad(a, f);
                    break;
                }
                case Node::Kind::Given: break;
            }
            nd.coef.push_back(base);
        }
        std::vector<Rational> c;
        if (m > 0) {
            std::vector<std::vector<Rational>> lhs;
            std::vector<Rational> rhs;
            for (const auto& [label, id] : rows) {
                const Node& r = nodes[static_cast<size_t>(id)];
                lhs.push_back(r.depends ? r.grad : std::vector<Rational>(m, Rational(0)));
                rhs.push_back(-r.coef[un]);
            }
            auto sol = solve_linear(lhs, rhs, m);
            if (!sol) throw ResonantOrder(n);
            c = *sol;
        }
        for (auto& nd : nodes) {
            if (nd.kind == Node::Kind::Given || !nd.depends) continue;
            for (size_t j = 0; j < m; ++j) nd.coef[un] += nd.grad[j] * c[j];
        }
        for (const auto& [label, id] : rows) {
            const Rational& v = nodes[static_cast<size_t>(id)].coef[un];
            if (v != 0) throw SeedInconsistency(n, label, residual_text(v, n));
        }
        for (const auto& [seed, id] : seeded) {
            if (n >= seed->known) continue;
            auto it = seed->coeffs.find(n);
            Rational want = it == seed->coeffs.end() ? Rational(0) : it->second;
            const Rational& got = nodes[static_cast<size_t>(id)].coef[un];
            if (got != want)
                throw SeedInconsistency(n, "seed " + seed->var, residual_text(Rational(got - want), n));
        }
    }

    std::map<std::string, QSeries> out;
    for (const auto& [name, id] : outputs) {
        const auto& coef = nodes[static_cast<size_t>(id)].coef;
        std::vector<Rational> dense(coef.begin(), coef.begin() + trunc);
        out[name] = QSeries::from_dense(dense);
    }
    return out;
}

}  // namespace qmf
