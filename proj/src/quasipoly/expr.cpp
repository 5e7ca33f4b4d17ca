#include "qmf/expr.hpp"

#include <cctype>

#include "qmf/errors.hpp"

namespace qmf {

namespace {

struct Token {
    enum class Kind { Num, Name, Theta, Sym, End } kind;
    std::string text;
    size_t pos;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(const std::string& s) {
    std::vector<Token> out;
    size_t i = 0;
    auto fail = [&](const std::string& why) { return ParseError(why + " at column " + std::to_string(i + 1) + " in '" + s + "'"); };
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        size_t start = i;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            out.push_back({Token::Kind::Num, s.substr(start, i - start), start});
            continue;
        }
        if (ident_start(c)) {
            while (i < s.size() && ident_char(s[i])) ++i;
            if (i < s.size() && s[i] == '@') {
                ++i;
                if (i + 1 < s.size() && s[i] == '1' && s[i + 1] == '*')
                    i += 2;
                else if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
                    ++i;
                else
                    throw fail("bad level suffix");
            }
            // Qualified correlator references: "X2.X", "X6<x,x,x^4>".
            if (i + 1 < s.size() && s[i] == '.' && ident_start(s[i + 1])) {
                ++i;
                while (i < s.size() && ident_char(s[i])) ++i;
            } else if (i < s.size() && s[i] == '<') {
                auto close = s.find('>', i);
                if (close == std::string::npos) throw fail("unterminated '<'");
                i = close + 1;
            }
            if (i < s.size() && s[i] == '{') {
                auto close = s.find('}', i);
                if (close == std::string::npos) throw fail("unterminated '{'");
                i = close + 1;
            }
            if (s.compare(i, 2, "(Q") == 0) {
                int depth = 0;
                size_t j = i;
                for (; j < s.size(); ++j) {
                    if (s[j] == '(') ++depth;
                    if (s[j] == ')' && --depth == 0) break;
                }
                if (j >= s.size()) throw fail("unterminated argument");
                i = j + 1;
            }
            std::string word = s.substr(start, i - start);
            out.push_back({word == "theta_q" ? Token::Kind::Theta : Token::Kind::Name, word, start});
            continue;
        }
        if (std::string("+-*/^()=").find(c) != std::string::npos) {
            out.push_back({Token::Kind::Sym, std::string(1, c), start});
            ++i;
            continue;
        }
        throw fail(std::string("unexpected character '") + c + "'");
    }
    out.push_back({Token::Kind::End, "", s.size()});
    return out;
}

class Parser {
public:
    explicit Parser(const std::string& s) : src_(s), toks_(lex(s)) {}

    ExprPtr parse_all() {
        ExprPtr e = expr();
        expect_end();
        return e;
    }

    Equation parse_eq() {
        ExprPtr lhs = expr();
        if (!accept("=")) throw error("expected '='");
        ExprPtr rhs = expr();
        expect_end();
        return {lhs, rhs};
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    bool is_sym(const std::string& s) const { return peek().kind == Token::Kind::Sym && peek().text == s; }
    bool accept(const std::string& s) {
        if (!is_sym(s)) return false;
        ++pos_;
        return true;
    }
    ParseError error(const std::string& why) const {
        return ParseError(why + " at column " + std::to_string(peek().pos + 1) + " in '" + src_ + "'");
    }
    void expect_end() {
        if (peek().kind != Token::Kind::End) throw error("unexpected trailing input");
    }

    ExprPtr expr() {
        ExprPtr e = term();
        while (true) {
            if (accept("+"))
                e = make_binary(Expr::Op::Add, e, term());
            else if (accept("-"))
                e = make_binary(Expr::Op::Sub, e, term());
            else
                return e;
        }
    }

    ExprPtr term() {
        ExprPtr e = unary();
        while (true) {
            if (accept("*"))
                e = make_binary(Expr::Op::Mul, e, unary());
            else if (accept("/"))
                e = make_binary(Expr::Op::Div, e, unary());
            else
                return e;
        }
    }

    ExprPtr unary() {
        if (accept("-")) {
            auto n = std::make_shared<Expr>();
            n->op = Expr::Op::Neg;
            n->args = {unary()};
            return n;
        }
        if (accept("+")) return unary();
        if (peek().kind == Token::Kind::Theta) {
            ++pos_;
            int order = 1;
            if (accept("^")) {
                if (peek().kind != Token::Kind::Num) throw error("theta_q power must be a positive integer");
                order = std::stoi(peek().text);
                ++pos_;
                if (order < 1) throw error("theta_q power must be a positive integer");
            }
            auto n = std::make_shared<Expr>();
            n->op = Expr::Op::Theta;
            n->theta_order = order;
            n->args = {unary()};
            return n;
        }
        return power();
    }

    Rational exponent() {
        if (peek().kind == Token::Kind::Num) {
            Rational v(mpz_class(peek().text));
            ++pos_;
            return v;
        }
        if (accept("-")) {
            if (peek().kind != Token::Kind::Num) throw error("expected integer exponent");
            Rational v(mpz_class(peek().text));
            ++pos_;
            return -v;
        }
        if (accept("(")) {
            bool neg = accept("-");
            if (peek().kind != Token::Kind::Num) throw error("expected rational exponent");
            Rational v(mpz_class(peek().text));
            ++pos_;
            if (accept("/")) {
                if (peek().kind != Token::Kind::Num) throw error("expected exponent denominator");
                mpz_class d(peek().text);
                ++pos_;
                if (d == 0) throw error("zero denominator");
                v /= d;
            }
            if (!accept(")")) throw error("expected ')'");
            return neg ? Rational(-v) : v;
        }
        throw error("expected exponent");
    }

    ExprPtr power() {
        ExprPtr base = atom();
        if (accept("^")) {
            auto n = std::make_shared<Expr>();
            n->op = Expr::Op::Pow;
            n->exponent = exponent();
            n->args = {base};
            return n;
        }
        return base;
    }

    ExprPtr atom() {
        const Token& t = peek();
        if (t.kind == Token::Kind::Num) {
            ++pos_;
            return make_num(Rational(mpz_class(t.text)));
        }
        if (t.kind == Token::Kind::Name) {
            ++pos_;
            return make_name(t.text);
        }
        if (accept("(")) {
            ExprPtr e = expr();
            if (!accept(")")) throw error("expected ')'");
            return e;
        }
        throw error("expected a number, name or '('");
    }

    std::string src_;
    std::vector<Token> toks_;
    size_t pos_ = 0;
};

int precedence(const ExprPtr& e) {
    switch (e->op) {
        case Expr::Op::Add:
        case Expr::Op::Sub: return 1;
        case Expr::Op::Mul:
        case Expr::Op::Div: return 2;
        case Expr::Op::Neg:
        case Expr::Op::Theta: return 3;
        case Expr::Op::Pow: return 4;
        case Expr::Op::Num: return sgn(e->value) < 0 || !is_integer(e->value) ? 2 : 5;
        case Expr::Op::Name: return 5;
    }
    return 0;
}

std::string wrap(const ExprPtr& e, int min_prec) {
    std::string s = to_string(e);
    return precedence(e) < min_prec ? "(" + s + ")" : s;
}

std::string exponent_text(const Rational& x) {
    if (is_integer(x) && sgn(x) >= 0) return x.get_str();
    return "(" + x.get_str() + ")";
}

}  // namespace

ExprPtr parse_expr(const std::string& text) { return Parser(text).parse_all(); }

Equation parse_equation(const std::string& text) { return Parser(text).parse_eq(); }

ExprPtr residual_expr(const Equation& eq) { return make_binary(Expr::Op::Sub, eq.lhs, eq.rhs); }

ExprPtr make_num(const Rational& v) {
    auto n = std::make_shared<Expr>();
    n->op = Expr::Op::Num;
    n->value = v;
    return n;
}

ExprPtr make_name(const std::string& name) {
    auto n = std::make_shared<Expr>();
    n->op = Expr::Op::Name;
    n->name = name;
    return n;
}

ExprPtr make_binary(Expr::Op op, ExprPtr a, ExprPtr b) {
    auto n = std::make_shared<Expr>();
    n->op = op;
    n->args = {std::move(a), std::move(b)};
    return n;
}

std::string to_string(const ExprPtr& e) {
    switch (e->op) {
        case Expr::Op::Num: return to_plain(e->value);
        case Expr::Op::Name: return e->name;
        case Expr::Op::Add: return wrap(e->args[0], 1) + " + " + wrap(e->args[1], 2);
        case Expr::Op::Sub: return wrap(e->args[0], 1) + " - " + wrap(e->args[1], 2);
        case Expr::Op::Mul: return wrap(e->args[0], 2) + "*" + wrap(e->args[1], 3);
        case Expr::Op::Div: return wrap(e->args[0], 2) + "/" + wrap(e->args[1], 3);
        case Expr::Op::Neg: return "-" + wrap(e->args[0], 3);
        case Expr::Op::Theta:
            return std::string("theta_q") + (e->theta_order > 1 ? "^" + std::to_string(e->theta_order) : "") + " " +
                   wrap(e->args[0], 3);
        case Expr::Op::Pow: return wrap(e->args[0], 5) + "^" + exponent_text(e->exponent);
    }
    return "";
}

std::set<std::string> names_in(const ExprPtr& e) {
    std::set<std::string> out;
    std::function<void(const ExprPtr&)> walk = [&](const ExprPtr& x) {
        if (x->op == Expr::Op::Name) out.insert(x->name);
        for (const auto& a : x->args) walk(a);
    };
    walk(e);
    return out;
}

int max_theta_order(const ExprPtr& e) {
    int inner = 0;
    for (const auto& a : e->args) inner = std::max(inner, max_theta_order(a));
    return e->op == Expr::Op::Theta ? inner + e->theta_order : inner;
}

RadSeries eval_series(const ExprPtr& e, const SeriesResolver& resolve, const Rational& theta_scale) {
    auto rec = [&](const ExprPtr& x) { return eval_series(x, resolve, theta_scale); };
    switch (e->op) {
        case Expr::Op::Num: return RadSeries(QSeries::constant(e->value));
        case Expr::Op::Name: return resolve(e->name);
        case Expr::Op::Add: return add(rec(e->args[0]), rec(e->args[1]));
        case Expr::Op::Sub: return sub(rec(e->args[0]), rec(e->args[1]));
        case Expr::Op::Mul: return mul(rec(e->args[0]), rec(e->args[1]));
        case Expr::Op::Div: return div(rec(e->args[0]), rec(e->args[1]));
        case Expr::Op::Neg: return -rec(e->args[0]);
        case Expr::Op::Pow: return rational_pow(rec(e->args[0]), e->exponent);
        case Expr::Op::Theta: {
            RadSeries f = rec(e->args[0]);
            for (int i = 0; i < e->theta_order; ++i) f = theta(f).scaled(Surd(theta_scale));
            return f;
        }
    }
    throw EvaluationError("unknown expression node");
}

}  // namespace qmf
