#pragma once

#include <string>

#include "qmf/generator.hpp"
#include "qmf/series.hpp"
#include "qmf/surd.hpp"

namespace qmf {

// All constructors return series known exactly below Q^prec.

// 1 + c_k sum sigma_{k-1}(n) Q^n, k in {2,4,6}.
QSeries eisenstein(int k, long prec);
// Q^{1/24} prod (1 - Q^n) through the pentagonal-number expansion.
QSeries eta(long prec);
// sum_n phase(n) Q^{m (n+a)^2 / 2}; throws IrrationalPhase.
QSeries theta_char(const Rational& a, const Rational& b, const Rational& m, long prec);
// j in {2,3,4}.
QSeries theta_const(int j, const Rational& m, long prec);
// Number of (m,n) with m^2+mn+n^2 = k.
QSeries lattice_theta_a2(long prec);

// Constant radical factor of a generator: 2^{3/2} for C@2, 432^{1/6} for C@1*,
// otherwise 1.
Surd generator_scale(const GeneratorId& id);
// The generator divided by its scale; always a rational series.
QSeries generator_normalized(const GeneratorId& id, long prec);
RadSeries generator(const GeneratorId& id, long prec);
// Throws IrrationalSeries for C@2 and C@1*.
QSeries generator_series(const GeneratorId& id, long prec);

// Optional on-disk memo of normalized expansions (JSON series format), keyed
// by id and precision. Empty path disables it.
void set_generator_disk_cache(const std::string& directory);

}  // namespace qmf
