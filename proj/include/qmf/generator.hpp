#pragma once

#include <string>

#include "qmf/rational.hpp"

namespace qmf {

enum class GenKind { Eta, Theta2, Theta3, Theta4, ThetaChar, Ei2, Ei4, Ei6, ThetaA2, A, B, C, E };

// Level tag for A/B/C/E. Level 1 stands for the exceptional "1*".
struct LevelInfo {
    int level;
    int r;
    long kappa;
};

LevelInfo level_info(int level);  // throws UnsupportedCombination
std::string level_name(int level);

// Textual form: kind, optional "@level", optional "{a,b}" for characteristics,
// optional "(Q^m)". Examples: "A@4", "C@3(Q^2)", "theta{1/6,0}(Q^3)", "Ei2".
struct GeneratorId {
    GenKind kind = GenKind::Eta;
    int level = 0;
    Rational a = 0;
    Rational b = 0;
    Rational arg = 1;

    static GeneratorId parse(const std::string& text);  // throws ParseError
    static bool looks_like(const std::string& text) noexcept;
    std::string to_string() const;

    GeneratorId at_base() const;  // same object at argument Q
    // Weight times two: theta factors carry weight 1/2.
    int doubled_weight() const;
    // E-type generators (the E@N family and Ei2) are the quasi-modular direction.
    bool is_e_type() const noexcept { return kind == GenKind::E || kind == GenKind::Ei2; }

    bool operator==(const GeneratorId& o) const { return to_string() == o.to_string(); }
    bool operator<(const GeneratorId& o) const { return to_string() < o.to_string(); }
};

}  // namespace qmf
