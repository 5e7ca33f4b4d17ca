#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qmf/quasipoly.hpp"
#include "qmf/series.hpp"

namespace qmf {

// <<P>>_{1,1} as a quasi-modular polynomial in the orbifold's own generators.
QuasiPoly genus1_poly(const std::string& orbifold);
// -Ei2/12 (r = 2, 3, 4, 6) or -Ei2/24 (r = 1), in Q, exact below Q^trunc.
QSeries genus1_closed(const std::string& orbifold, long trunc);
// Elliptic curve: theta_q(-log eta) = -theta(eta)/eta, built from the eta
// product rather than from Ei2.
QSeries genus1_elliptic_from_eta(long trunc);

struct GetzlerResult {
    QSeries value;                                        // <<P>>_{1,1} in Q
    std::vector<std::pair<std::string, QSeries>> parts;   // named contributions, in q
    std::vector<std::pair<std::string, QSeries>> forms;   // equivalent forms of the value, in Q
};
// Genus-one correlator from genus-zero data through Getzler's relation.
// Throws ZeroLeadingDivisor if the correlator divided by vanishes.
GetzlerResult genus1_getzler(const std::string& orbifold, long trunc);

// Derivative of genus1_poly along its E-type generator.
Rational genus1_E_derivative(const std::string& orbifold);

// c_r for r = 2, 3, 4, 6; throws UnsupportedOrbifold otherwise.
long genus2_constant(int r);
// (7/5) F^2 + (1/10 + 1/(10 r) + c_r/120) theta_q F with theta_q = r theta_Q,
// for a genus-one series F in Q.
QSeries genus2_formula(const QSeries& genus1_Q, int r);

struct Genus2Result {
    QSeries series;   // from the genus-one series
    QuasiPoly poly;   // same quantity in Ei2, Ei4 via theta_Q Ei2 = (Ei2^2 - Ei4)/12
};
Genus2Result genus2_Ppsi2(const std::string& orbifold, long trunc);

}  // namespace qmf
