#pragma once

#include "term.hpp"

#include <string>
#include <vector>

namespace twitch {

/**
 * Unit-equality problem: axiom equations plus one ground goal equation.
 * Construction and validation live in the TPTP frontend.
 */
struct Problem {
    std::string name;
    std::vector<Symbol> signature;
    std::vector<Equation> axioms;
    Equation goal;
};

}  // namespace twitch
