#pragma once

#include "abstraction.hpp"
#include "term.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace twitch {

/**
 * Multiset of alpha-normalized terms. Variables occurring in corpus terms are
 * rigid atoms: a pattern hole may bind them, distinct atoms never equal each
 * other.
 */
struct Corpus {
    std::vector<TermPtr> terms;

    std::uint64_t total_weight() const;
    std::vector<Symbol> symbols() const;  // sorted by (name, arity)
};

Corpus make_corpus(std::span<const TermPtr> terms);

struct ScoredPattern {
    Abstraction abstraction;
    /// Total corpus weight saved by rewriting every match site with a fresh
    /// symbol of weight 1 (the compression objective).
    std::uint64_t utility = 0;
    /// Non-overlapping outermost-first match sites at discovery time.
    std::uint32_t match_count = 0;
};

/**
 * Count of subterm positions across the corpus where the pattern matches,
 * outermost-first, excluding positions strictly inside an already counted
 * site.
 */
std::uint32_t match_sites(const TermPtr& pattern, const Corpus& c);

/**
 * Replaces every counted match site by fresh applied to the images of the
 * pattern variables in first-occurrence order, recursing into the images so
 * nested sites inside arguments are rewritten too. fresh.arity must equal the
 * number of distinct pattern variables.
 */
TermPtr rewrite_term_with(const TermPtr& t, const TermPtr& pattern, Symbol fresh);
Corpus rewrite_with(const Corpus& c, const TermPtr& pattern, Symbol fresh);

/// Corpus weight reduction achieved by rewriting with the pattern.
std::uint64_t compression_utility(const Corpus& c, const TermPtr& pattern);

/**
 * Iterative greedy compression: repeatedly find the utility-maximizing
 * pattern with at most max_arity distinct variables, rewrite the corpus with
 * a fresh symbol, and continue, up to top_n patterns or until no pattern has
 * positive utility. Patterns are returned in discovery order with fresh
 * symbols from earlier iterations inlined back.
 */
std::vector<ScoredPattern> compress(const Corpus& c, std::uint32_t top_n, std::uint32_t max_arity);

}  // namespace twitch
