#include "qmf/rational.hpp"

#include <cctype>

#include "qmf/errors.hpp"

namespace qmf {

std::string to_fraction(const Rational& x) {
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string to_plain(const Rational& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return to_fraction(x);
}

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    std::string s = text;
    bool negative = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        negative = s[0] == '-';
        s.erase(0, 1);
    }
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw ParseError("not a rational: '" + text + "'");
    mpz_class d(den);
    if (d == 0) throw ParseError("zero denominator in '" + text + "'");
    Rational out(mpz_class(num), d);
    out.canonicalize();
    return negative ? Rational(-out) : out;
}

Rational frac(long n, long d) {
    Rational out(n, d);
    out.canonicalize();
    return out;
}

bool is_integer(const Rational& x) { return x.get_den() == 1; }

Rational floor_of(const Rational& x) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return Rational(q);
}

}  // namespace qmf
