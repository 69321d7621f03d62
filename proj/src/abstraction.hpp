#pragma once

#include "rational.hpp"
#include "term.hpp"

#include <optional>
#include <span>
#include <vector>

namespace twitch {

/**
 * Weighting scheme for abstractions: either every abstraction gets the fixed
 * weight k, or w_A = skeleton_weight(A) * k.
 */
struct WeightMode {
    enum class Kind { Constant, Factor };
    Kind kind = Kind::Factor;
    Rational k = Rational(1, 5);

    static WeightMode constant(Rational k) { return {Kind::Constant, k}; }
    static WeightMode factor(Rational k) { return {Kind::Factor, k}; }
};

/**
 * A term pattern with schematic variables. Patterns are alpha-normalized at
 * construction and must contain at least one function application. A
 * resonator only matches when every variable binds to a variable.
 */
class Abstraction {
public:
    explicit Abstraction(TermPtr pattern, bool resonator = false);

    const TermPtr& pattern() const { return pattern_; }
    bool resonator() const { return resonator_; }
    std::uint32_t skeleton_weight() const { return pattern_->skeleton_weight(); }
    /// Number of distinct variables in the pattern.
    std::uint32_t arity() const { return n_vars_; }

    const std::optional<Rational>& assigned_weight() const { return weight_; }
    void assign_weight(const WeightMode& mode);
    void set_weight(Rational w) { weight_ = w; }

private:
    TermPtr pattern_;
    bool resonator_;
    std::uint32_t n_vars_;
    std::optional<Rational> weight_;
};

/// w_A under the given mode (does not store it).
Rational abstraction_weight(const Abstraction& a, const WeightMode& mode);

/**
 * Minimal weight of t over all interpretations: at each subterm the plain
 * clause 1 + sum of child results competes with w_A + sum over the distinct
 * sigma-bound variables of the result for the bound subterm, for every
 * abstraction matching at that root. Computed bottom-up; requires every
 * abstraction to carry an assigned weight.
 */
Rational abstracted_weight(const TermPtr& t, std::span<const Abstraction> abstractions);
Rational abstracted_weight(const Equation& e, std::span<const Abstraction> abstractions);

/// True iff the pattern matches t and every binding image is a variable.
bool resonator_matches(const Abstraction& a, const TermPtr& t);

/**
 * fresh(X0..Xn-1) = pattern, variables in first-occurrence order. Throws
 * std::invalid_argument when fresh.arity differs from the number of distinct
 * pattern variables or fresh occurs in the pattern.
 */
Equation to_definitional_axiom(const Abstraction& a, Symbol fresh);

/// True iff every symbol of the pattern occurs in the signature with the same arity.
bool compatible(const Abstraction& a, std::span<const Symbol> signature);

}  // namespace twitch
