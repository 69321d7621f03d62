#pragma once

#include "abstraction.hpp"
#include "problem.hpp"
#include "proof.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

namespace twitch {

/**
 * Rewrite rule or unorientable equation. Oriented rules satisfy
 * kbo_compare(lhs, rhs) == GT; unoriented ones are used for ordered
 * rewriting with an instance-level comparison.
 */
struct Rule {
    RuleId id = 0;
    TermPtr lhs, rhs;
    bool oriented = true;
    bool from_axiom = false;
    ProofPtr proof;  // proof of lhs = rhs from the axioms

    Equation equation() const { return Equation{lhs, rhs}; }
};

struct OrientResult {
    enum class Kind { Oriented, Unoriented, Trivial } kind;
    TermPtr lhs, rhs;  // oriented left-to-right when kind == Oriented
};

/// Orients by KBO: GT keeps the equation, LT swaps it, EQ is trivial,
/// INCOMPARABLE stays unoriented.
OrientResult orient(const Equation& e);

struct CriticalPair {
    Equation eq;      // the two reducts of the peak
    TermPtr peak;
    Position pos;     // inner rewrite position in the peak
    RuleId outer_id = 0, inner_id = 0;
    bool outer_reversed = false, inner_reversed = false;
    Substitution outer_subst, inner_subst;
};

/**
 * All overlaps of inner.lhs (or, for unoriented rules, either side) into
 * non-variable positions of outer's reducing side, with the ordered-rewriting
 * side condition checked on the unified instance. The rules are renamed apart
 * internally.
 */
std::vector<CriticalPair> critical_pairs(const Rule& outer, const Rule& inner);

/// The spec-level view: just the equations.
std::vector<Equation> critical_pair_equations(const Rule& outer, const Rule& inner);

struct RewriteStep {
    RuleId rule_id;
    Position pos;
    Substitution subst;
    bool reversed;
    TermPtr result;
};

/**
 * Exhaustive leftmost-innermost normalization. Oriented rules apply
 * unconditionally, unoriented equations only when the instantiated step is
 * KBO-decreasing; at each redex the first applicable rule by ascending id
 * wins. Rules must be passed in ascending id order.
 */
TermPtr normalize(const TermPtr& t, std::span<const Rule> rules, std::vector<RewriteStep>* trace = nullptr);

struct Cost {
    double wall_seconds = 0;
    std::uint64_t selected_cps = 0;
};

struct Limits {
    std::optional<double> wall_seconds;
    std::optional<std::uint64_t> selected_cps;
};

enum class OutcomeKind { Proved, Saturated, ResourceOut };

struct Outcome {
    OutcomeKind kind;
    ProofPtr proof;  // set when kind == Proved
    Cost cost;
    bool wall_exhausted = false;  // for ResourceOut: wall clock vs selection budget
};

struct ProverStats {
    std::uint64_t generated_cps = 0;
    std::uint64_t selected_cps = 0;
    std::uint64_t rules_added = 0;
};

struct Lemma {
    RuleId id;
    Equation equation;
    ProofPtr proof;
};

/**
 * Unfailing completion with abstraction-biased selection. The passive queue
 * is ordered by (abstracted weight of the equation, insertion sequence);
 * scores are fixed at generation time.
 */
class Prover {
public:
    Prover(Problem problem, std::vector<Abstraction> abstractions, Limits limits);

    Outcome run();

    /// Active rules in ascending id order.
    std::vector<Rule> active_rules() const;
    /// All non-axiom active rules with their recorded proofs.
    std::vector<Lemma> lemmas() const;
    const ProverStats& stats() const { return stats_; }
    const Problem& problem() const { return problem_; }

private:
    struct Passive {
        Equation eq;
        ProofPtr proof;
        bool from_axiom;
        Rational score;
        std::uint64_t seq;
    };
    struct PassiveOrder {
        bool operator()(const Passive& a, const Passive& b) const {
            if (a.score != b.score) return a.score > b.score;  // min-heap
            return a.seq > b.seq;
        }
    };

    void push_passive(Equation eq, ProofPtr proof, bool from_axiom);
    ProofPtr extend_proof(const Equation& conclusion, ProofPtr base,
                          const std::vector<RewriteStep>& lhs_trace,
                          const std::vector<RewriteStep>& rhs_trace) const;
    void add_sub_lemmas(std::map<RuleId, ProofPtr>& subs, const std::vector<RewriteStep>& trace) const;
    void interreduce(const Rule& new_rule);
    void generate_cps(const Rule& new_rule);
    std::optional<ProofPtr> goal_proof();
    std::vector<Rule> rules_snapshot() const;
    const Rule* find_rule(RuleId id) const;

    Problem problem_;
    std::vector<Abstraction> abstractions_;
    Limits limits_;

    std::map<RuleId, Rule> active_;
    std::priority_queue<Passive, std::vector<Passive>, PassiveOrder> passive_;
    std::unordered_set<std::string> seen_equations_;  // canonical keys of active rules
    std::vector<ProofPtr> axiom_proofs_;
    RuleId next_id_ = 0;
    std::uint64_t next_seq_ = 0;
    ProverStats stats_;
};

/// Convenience wrapper: run completion once and return the outcome.
Outcome complete(const Problem& problem, std::span<const Abstraction> abstractions, const Limits& limits);

}  // namespace twitch
