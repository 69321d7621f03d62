#pragma once

#include "abstraction.hpp"
#include "term.hpp"

#include <optional>
#include <span>
#include <string>

namespace twitch {

/**
 * Curried s-expression translation with one binder per distinct variable in
 * first-occurrence order:
 *   term := symbol | variable | (lam variable term) | (symbol term+) | (#k term*)
 * Applications are printed flat; a constant prints as a bare symbol.
 */
std::string to_lambda(const TermPtr& t);

/**
 * Parses a pattern body in the lambda grammar with #k holes. Returns the
 * first-order abstraction, or nullopt when the body is higher-order: an
 * embedded binder, a hole or non-symbol in head position, a bare hole, or an
 * application of a signature symbol at the wrong arity. Malformed input
 * throws std::invalid_argument (a syntax error, distinct from the
 * higher-order discard).
 */
std::optional<Abstraction> parse_external_abstraction(const std::string& s,
                                                      std::span<const Symbol> signature = {});

}  // namespace twitch
