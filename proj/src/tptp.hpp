#pragma once

#include "abstraction.hpp"
#include "completion.hpp"
#include "problem.hpp"
#include "proof.hpp"

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace twitch {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Parses the CNF unit-equality subset of TPTP:
 *   cnf(name, role, literal).   role in {axiom, hypothesis, negated_conjecture}
 *   literal: s = t | s != t, optionally parenthesized
 *   include('file').            resolved against include_base
 * Lowercase identifiers are function symbols, uppercase are variables, '%'
 * starts a comment. The single negated_conjecture s != t becomes the goal
 * s = t with its variables Skolemized to fresh sk<n> constants.
 */
Problem parse_problem(const std::string& text, const std::string& include_base = "",
                      const std::string& name = "");
Problem parse_problem_file(const std::string& path, const std::string& include_base = "");

std::string render_problem(const Problem& p);

/**
 * Abstraction file format: one pattern per line in TPTP term syntax,
 * uppercase identifiers are variables, '%' begins a comment, blank lines are
 * ignored, a "resonator:" prefix marks a resonator.
 */
std::vector<Abstraction> parse_abstractions(const std::string& text, std::span<const Symbol> signature);
std::string render_abstractions(std::span<const Abstraction> abstractions);

/// Parses one term in TPTP syntax against an open signature (arities are
/// inferred and must be used consistently).
TermPtr parse_term_line(const std::string& line);

/**
 * Renders "% SZS status Unsatisfiable" followed by the goal chain and every
 * cited lemma, in a form the replay checker can parse back. The proof must
 * replay against the problem's axioms.
 */
std::string render_proof(const Proof& proof, const Problem& problem);

const char* szs_status(const Outcome& outcome);

}  // namespace twitch
