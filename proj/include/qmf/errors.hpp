#pragma once

#include <stdexcept>
#include <string>

namespace qmf {

// Every failure raised by the library carries a stable kind name so that
// callers (CLI exit codes, reports) can branch without string matching.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define QMF_DEFINE_ERROR(Name)                                              \
    class Name : public Error {                                             \
    public:                                                                 \
        explicit Name(const std::string& what) : Error(#Name, what) {}      \
    }

QMF_DEFINE_ERROR(DivisionByZeroSeries);
QMF_DEFINE_ERROR(NegativeValuation);
QMF_DEFINE_ERROR(IrrationalLeadingRoot);
QMF_DEFINE_ERROR(InsufficientTruncation);
QMF_DEFINE_ERROR(IrrationalPhase);
QMF_DEFINE_ERROR(UnsupportedCombination);
QMF_DEFINE_ERROR(IrrationalSeries);
QMF_DEFINE_ERROR(InhomogeneousPolynomial);
QMF_DEFINE_ERROR(MixedEGenerators);
QMF_DEFINE_ERROR(UnsupportedOrbifold);
QMF_DEFINE_ERROR(UnknownCorrelator);
QMF_DEFINE_ERROR(ZeroLeadingDivisor);
QMF_DEFINE_ERROR(UnknownSuite);
QMF_DEFINE_ERROR(ParseError);
QMF_DEFINE_ERROR(EvaluationError);

#undef QMF_DEFINE_ERROR

class ResonantOrder : public Error {
public:
    explicit ResonantOrder(long order)
        : Error("ResonantOrder", "linear system singular at order " + std::to_string(order)),
          order_(order) {}
    long order() const noexcept { return order_; }

private:
    long order_;
};

class SeedInconsistency : public Error {
public:
    SeedInconsistency(long order, const std::string& equation, const std::string& residual)
        : Error("SeedInconsistency", "order " + std::to_string(order) + ", equation " + equation +
                                         ", residual " + residual),
          order_(order), equation_(equation) {}
    long order() const noexcept { return order_; }
    const std::string& equation() const noexcept { return equation_; }

private:
    long order_;
    std::string equation_;
};

}  // namespace qmf
