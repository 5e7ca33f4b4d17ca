#include "qmf/modforms.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "qmf/errors.hpp"

namespace qmf {

namespace {

long isqrt_ceil(long x) {
    long s = static_cast<long>(std::sqrt(static_cast<double>(x)));
    while (s * s < x) ++s;
    while (s > 0 && (s - 1) * (s - 1) >= x) --s;
    return s;
}

Rational ceil_of(const Rational& x) { return -floor_of(-x); }

struct Cache {
    std::mutex mu;
    std::map<std::pair<std::string, long>, QSeries> memo;
    std::string disk;
};

Cache& cache() {
    static Cache c;
    return c;
}

std::string cache_file(const std::string& dir, const std::string& key, long prec) {
    std::string name;
    for (char ch : key) name += (std::isalnum(static_cast<unsigned char>(ch)) ? ch : '_');
    // Distinct ids must not collide after sanitizing.
    std::size_t h = std::hash<std::string>{}(key);
    std::ostringstream out;
    out << name << "-" << std::hex << h << std::dec << "-" << prec << ".json";
    return (std::filesystem::path(dir) / out.str()).string();
}

QSeries normalized(GenKind kind, int level, const Rational& arg, long prec) {
    GeneratorId id;
    id.kind = kind;
    id.level = level;
    id.arg = arg;
    return generator_normalized(id, prec);
}

QSeries eta_at(long m, long prec) { return normalized(GenKind::Eta, 0, m, prec); }
QSeries ei_at(GenKind k, long m, long prec) { return normalized(k, 0, m, prec); }

QSeries level_generator(GenKind kind, int level, long p) {
    auto k = [](long v) { return QSeries::constant(v); };
    switch (level) {
        case 4: {
            QSeries e1 = eta_at(1, p), e2 = eta_at(2, p), e4 = eta_at(4, p);
            if (kind == GenKind::A) return pow(e2, 10) / (pow(e1, 4) * pow(e4, 4));
            if (kind == GenKind::B) return pow(e1, 4) / pow(e2, 2);
            if (kind == GenKind::C) return k(4) * pow(e4, 4) / pow(e2, 2);
            QSeries ei1 = ei_at(GenKind::Ei2, 1, p), ei2 = ei_at(GenKind::Ei2, 2, p), ei4 = ei_at(GenKind::Ei2, 4, p);
            return (ei1 - k(2) * ei2 + k(4) * ei4).scaled(Rational(1, 3));
        }
        case 3: {
            QSeries e1 = eta_at(1, p), e3 = eta_at(3, p);
            if (kind == GenKind::A) return root(k(27) * pow(e3, 12) + pow(e1, 12), 3) / (e1 * e3);
            if (kind == GenKind::B) return pow(e1, 3) / e3;
            if (kind == GenKind::C) return k(3) * pow(e3, 3) / e1;
            return (k(3) * ei_at(GenKind::Ei2, 3, p) + ei_at(GenKind::Ei2, 1, p)).scaled(Rational(1, 4));
        }
        case 2: {
            QSeries e1 = eta_at(1, p), e2 = eta_at(2, p);
            if (kind == GenKind::A) return root(k(64) * pow(e2, 24) + pow(e1, 24), 4) / (pow(e1, 2) * pow(e2, 2));
            if (kind == GenKind::B) return pow(e1, 4) / pow(e2, 2);
            if (kind == GenKind::C) return pow(e2, 4) / pow(e1, 2);  // times 2^{3/2}
            return (k(2) * ei_at(GenKind::Ei2, 2, p) + ei_at(GenKind::Ei2, 1, p)).scaled(Rational(1, 3));
        }
        case 1: {
            QSeries e4 = ei_at(GenKind::Ei4, 1, p), e6 = ei_at(GenKind::Ei6, 1, p);
            if (kind == GenKind::E) {
                // Log-derivative of C^6 B^6, proportional to the discriminant.
                QSeries disc = (pow(e4, 3) - pow(e6, 2)).scaled(Rational(1, 1728));
                return theta(disc) / disc;
            }
            QSeries a = root(e4, 4);
            if (kind == GenKind::A) return a;
            QSeries a6 = pow(a, 6);
            if (kind == GenKind::B) return root((a6 + e6).scaled(Rational(1, 2)), 6);
            return root((a6 - e6).scaled(Rational(1, 864)), 6);  // times 432^{1/6}
        }
        default: break;
    }
    throw UnsupportedCombination("level " + std::to_string(level));
}

QSeries base_generator(const GeneratorId& id, long p) {
    switch (id.kind) {
        case GenKind::Eta: return eta(p);
        case GenKind::Theta2: return theta_const(2, 1, p);
        case GenKind::Theta3: return theta_const(3, 1, p);
        case GenKind::Theta4: return theta_const(4, 1, p);
        case GenKind::ThetaChar: return theta_char(id.a, id.b, 1, p);
        case GenKind::Ei2: return eisenstein(2, p);
        case GenKind::Ei4: return eisenstein(4, p);
        case GenKind::Ei6: return eisenstein(6, p);
        case GenKind::ThetaA2: return lattice_theta_a2(p);
        default: return level_generator(id.kind, id.level, p);
    }
}

// Eta quotients and roots lose a fraction of an order; retry with more slack.
QSeries base_with_slack(const GeneratorId& id, long prec) {
    for (long extra = 1; extra <= 256; extra *= 2) {
        QSeries s = base_generator(id, prec + extra);
        if (s.exact() || s.trunc_exponent() >= prec) return s.truncate(prec);
    }
    throw InsufficientTruncation("could not reach precision for " + id.to_string());
}

}  // namespace

QSeries eisenstein(int k, long prec) {
    long c;
    switch (k) {
        case 2: c = -24; break;
        case 4: c = 240; break;
        case 6: c = -504; break;
        default: throw UnsupportedCombination("Eisenstein weight " + std::to_string(k));
    }
    std::vector<mpz_class> sigma(static_cast<size_t>(std::max(prec, 1L)));
    for (long d = 1; d < prec; ++d) {
        mpz_class pw;
        mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(k - 1));
        for (long n = d; n < prec; n += d) sigma[static_cast<size_t>(n)] += pw;
    }
    std::vector<QSeries::Term> t;
    t.emplace_back(0, Rational(1));
    for (long n = 1; n < prec; ++n) t.emplace_back(n, Rational(c * sigma[static_cast<size_t>(n)]));
    return QSeries(1, prec, std::move(t));
}

QSeries eta(long prec) {
    // Exponent 1/24 + k(3k-1)/2 on grid 24.
    std::vector<QSeries::Term> t;
    for (long k = -isqrt_ceil(prec) - 2; k <= isqrt_ceil(prec) + 2; ++k) {
        long e = 1 + 12 * k * (3 * k - 1);
        if (e < 24 * prec) t.emplace_back(e, Rational(k % 2 == 0 ? 1 : -1));
    }
    return QSeries(24, 24 * prec, std::move(t));
}

QSeries theta_char(const Rational& a_in, const Rational& b, const Rational& m, long prec) {
    if (sgn(m) <= 0) throw UnsupportedCombination("argument power must be positive");
    Rational a = a_in - floor_of(a_in);
    // Phase exp(2 pi i (n+a) b) is rational for every n iff 2b and 2ab are integers.
    if (!is_integer(Rational(2 * b)) || !is_integer(Rational(2 * a * b)))
        throw IrrationalPhase("characteristic (" + to_plain(a) + "," + to_plain(b) + ") has irrational phases");
    bool alternating = !is_integer(b);  // b = 1/2 with a integral
    long p = m.get_num().get_si(), q = m.get_den().get_si();
    long s = a.get_num().get_si(), tt = a.get_den().get_si();
    // m (n+a)^2 / 2 = p (n t + s)^2 / (2 q t^2).
    long grid = 2 * q * tt * tt;
    long limit = prec * grid;
    long bound = isqrt_ceil(2 * prec * q / std::max(p, 1L) + 1) + 2;
    std::vector<QSeries::Term> terms;
    for (long n = -bound; n <= bound; ++n) {
        long x = n * tt + s;
        long k = p * x * x;
        if (k >= limit) continue;
        long sign = 1;
        if (alternating && (n % 2 != 0)) sign = -1;
        // b integral shifts are excluded by GeneratorId; b = 0 here otherwise.
        terms.emplace_back(k, Rational(sign));
    }
    return QSeries(grid, limit, std::move(terms));
}

QSeries theta_const(int j, const Rational& m, long prec) {
    switch (j) {
        case 2: return theta_char(Rational(1, 2), 0, m, prec);
        case 3: return theta_char(0, 0, m, prec);
        case 4: return theta_char(0, Rational(1, 2), m, prec);
        default: throw UnsupportedCombination("theta constant index " + std::to_string(j));
    }
}

QSeries lattice_theta_a2(long prec) {
    std::vector<long> count(static_cast<size_t>(std::max(prec, 1L)), 0);
    long bound = isqrt_ceil(2 * prec) + 1;
    for (long m = -bound; m <= bound; ++m)
        for (long n = -bound; n <= bound; ++n) {
            long norm = m * m + m * n + n * n;
            if (norm < prec) ++count[static_cast<size_t>(norm)];
        }
    std::vector<QSeries::Term> t;
    for (long k = 0; k < prec; ++k) t.emplace_back(k, Rational(count[static_cast<size_t>(k)]));
    return QSeries(1, prec, std::move(t));
}

Surd generator_scale(const GeneratorId& id) {
    if (id.kind != GenKind::C) return Surd(1);
    if (id.level == 2) return Surd::power(2, Rational(3, 2));
    if (id.level == 1) return Surd::power(432, Rational(1, 6));
    return Surd(1);
}

void set_generator_disk_cache(const std::string& directory) {
    std::lock_guard lock(cache().mu);
    cache().disk = directory;
    if (!directory.empty()) std::filesystem::create_directories(directory);
}

QSeries generator_normalized(const GeneratorId& id, long prec) {
    if (prec < 1) throw InsufficientTruncation("precision must be at least 1");
    if ((id.kind == GenKind::A || id.kind == GenKind::B || id.kind == GenKind::C || id.kind == GenKind::E))
        level_info(id.level);
    const std::string key = id.to_string();
    std::string disk;
    {
        std::lock_guard lock(cache().mu);
        auto it = cache().memo.lower_bound({key, prec});
        if (it != cache().memo.end() && it->first.first == key) return it->second.truncate(prec);
        disk = cache().disk;
    }
    std::string file = disk.empty() ? std::string() : cache_file(disk, key, prec);
    if (!file.empty() && std::filesystem::exists(file)) {
        std::ifstream in(file);
        std::stringstream buf;
        buf << in.rdbuf();
        QSeries s = series_from_json(buf.str());
        std::lock_guard lock(cache().mu);
        cache().memo.emplace(std::make_pair(key, prec), s);
        return s;
    }
    QSeries result;
    if (id.arg == 1) {
        result = base_with_slack(id, prec);
    } else {
        long p = id.arg.get_num().get_si(), q = id.arg.get_den().get_si();
        long inner = ceil_of(frac(prec * q, p)).get_num().get_si();
        result = substitute_power(generator_normalized(id.at_base(), std::max(inner, 1L)), p, q).truncate(prec);
    }
    if (!file.empty()) {
        std::ofstream out(file);
        out << to_json(result) << "\n";
    }
    std::lock_guard lock(cache().mu);
    cache().memo.emplace(std::make_pair(key, prec), result);
    return result;
}

RadSeries generator(const GeneratorId& id, long prec) {
    return RadSeries(generator_scale(id), generator_normalized(id, prec));
}

QSeries generator_series(const GeneratorId& id, long prec) { return generator(id, prec).rational(); }

}  // namespace qmf
