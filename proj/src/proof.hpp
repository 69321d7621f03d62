#pragma once

#include "term.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace twitch {

using RuleId = std::uint32_t;

/**
 * One equational step: chain[i+1] is chain[i] with the cited rule's instance
 * applied at pos. When reversed, the rule equation is used right-to-left.
 */
struct Justification {
    RuleId rule_id = 0;
    Position pos;
    Substitution subst;
    bool reversed = false;
};

struct Proof;
using ProofPtr = std::shared_ptr<const Proof>;

/**
 * Recorded equational proof: a chain lhs = t1 = ... = rhs where every step
 * cites a rule, plus the proofs of the cited rules. Axiom leaves are proofs
 * whose single step cites their own rule id.
 */
struct Proof {
    Equation conclusion;
    std::vector<TermPtr> chain;            // chain.front() == conclusion.lhs, chain.back() == conclusion.rhs
    std::vector<Justification> steps;      // steps[i] justifies chain[i] -> chain[i+1]
    std::map<RuleId, ProofPtr> sub_lemmas; // proofs of every cited rule (axioms included as leaves)
    bool is_axiom = false;

    static ProofPtr axiom(RuleId id, const Equation& e);
};

/**
 * T(l=r): every chain term of the proof and, recursively, of all sub-lemma
 * proofs, deduplicated as a set after alpha-normalization. Deterministic
 * order (sorted structurally).
 */
std::vector<TermPtr> proof_terms(const Proof& p);

/// Sum of |t| over proof_terms(p).
std::uint32_t proof_terms_size(const Proof& p);

/**
 * Step-by-step verification: each consecutive chain pair differs by exactly
 * one rewrite that is an instance of the cited rule at the cited position,
 * and every cited rule traces to the given axioms through sub_lemmas.
 * Returns std::nullopt on success, otherwise a description of the failure.
 */
std::optional<std::string> replay_proof(const Proof& p, std::span<const Equation> axioms);

std::string to_string(const Position& pos);  // "root" or 1-based dotted path

}  // namespace twitch
