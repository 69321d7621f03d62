#include "proof.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace twitch {

ProofPtr Proof::axiom(RuleId id, const Equation& e) {
    auto p = std::make_shared<Proof>();
    p->conclusion = e;
    p->chain = {e.lhs, e.rhs};
    if (!term_eq(e.lhs, e.rhs)) p->steps = {Justification{id, {}, {}, false}};
    else p->chain = {e.lhs};
    p->is_axiom = true;
    return p;
}

namespace {

void collect_terms(const Proof& p, std::unordered_set<const Proof*>& seen,
                   std::vector<TermPtr>& out) {
    if (!seen.insert(&p).second) return;
    for (const auto& t : p.chain) out.push_back(alpha_normalize(t));
    for (const auto& [id, sub] : p.sub_lemmas)
        if (sub) collect_terms(*sub, seen, out);
}

}  // namespace

std::vector<TermPtr> proof_terms(const Proof& p) {
    std::unordered_set<const Proof*> seen;
    std::vector<TermPtr> all;
    collect_terms(p, seen, all);
    std::sort(all.begin(), all.end(), [](const TermPtr& a, const TermPtr& b) { return term_cmp(a, b) < 0; });
    all.erase(std::unique(all.begin(), all.end(),
                          [](const TermPtr& a, const TermPtr& b) { return term_eq(a, b); }),
              all.end());
    return all;
}

std::uint32_t proof_terms_size(const Proof& p) {
    std::uint32_t total = 0;
    for (const auto& t : proof_terms(p)) total += term_size(t);
    return total;
}

namespace {

struct ReplayCtx {
    std::span<const Equation> axioms;
    std::unordered_set<const Proof*> verified;

    std::optional<std::string> verify(const Proof& p) {
        if (verified.count(&p)) return std::nullopt;
        if (p.chain.empty()) return "empty chain";
        if (!term_eq(p.chain.front(), p.conclusion.lhs)) return "chain does not start at conclusion lhs";
        if (!term_eq(p.chain.back(), p.conclusion.rhs)) return "chain does not end at conclusion rhs";

        if (p.is_axiom) {
            bool found = false;
            for (const auto& ax : axioms)
                if (equation_equal(ax, p.conclusion)) { found = true; break; }
            if (!found) return "axiom leaf not among the problem axioms: " + to_string(p.conclusion);
            verified.insert(&p);
            return std::nullopt;
        }

        if (p.steps.size() + 1 != p.chain.size()) return "step/chain length mismatch";
        for (std::size_t i = 0; i < p.steps.size(); ++i) {
            const Justification& j = p.steps[i];
            auto it = p.sub_lemmas.find(j.rule_id);
            if (it == p.sub_lemmas.end() || !it->second)
                return "step cites rule " + std::to_string(j.rule_id) + " with no recorded proof";
            const Equation& rule = it->second->conclusion;
            TermPtr from = j.reversed ? rule.rhs : rule.lhs;
            TermPtr to = j.reversed ? rule.lhs : rule.rhs;
            TermPtr redex = subterm_at(p.chain[i], j.pos);
            if (!redex) return "position " + to_string(j.pos) + " missing in chain term";
            if (!term_eq(j.subst.apply(from), redex))
                return "redex is not the cited instance at step " + std::to_string(i);
            TermPtr expected = replace_at(p.chain[i], j.pos, j.subst.apply(to));
            if (!term_eq(expected, p.chain[i + 1]))
                return "step " + std::to_string(i) + " does not produce the next chain term";
        }
        verified.insert(&p);
        for (const auto& [id, sub] : p.sub_lemmas) {
            if (auto err = verify(*sub)) return err;
        }
        return std::nullopt;
    }
};

}  // namespace

std::optional<std::string> replay_proof(const Proof& p, std::span<const Equation> axioms) {
    ReplayCtx ctx{axioms, {}};
    return ctx.verify(p);
}

std::string to_string(const Position& pos) {
    if (pos.empty()) return "root";
    std::string out;
    for (std::size_t i = 0; i < pos.size(); ++i) {
        if (i) out += ".";
        out += std::to_string(pos[i] + 1);
    }
    return out;
}

}  // namespace twitch
