#include "abstraction.hpp"

#include <stdexcept>
#include <unordered_map>

namespace twitch {

Abstraction::Abstraction(TermPtr pattern, bool resonator)
    : pattern_(alpha_normalize(pattern)), resonator_(resonator) {
    if (pattern_->is_var())
        throw std::invalid_argument("abstraction pattern must not be a bare variable");
    n_vars_ = static_cast<std::uint32_t>(distinct_vars(pattern_).size());
}

void Abstraction::assign_weight(const WeightMode& mode) { weight_ = abstraction_weight(*this, mode); }

Rational abstraction_weight(const Abstraction& a, const WeightMode& mode) {
    if (mode.k < Rational(0)) throw std::invalid_argument("abstraction weight constant must be non-negative");
    if (mode.kind == WeightMode::Kind::Constant) return mode.k;
    return Rational(a.skeleton_weight()) * mode.k;
}

namespace {

struct WeightCtx {
    std::span<const Abstraction> abstractions;
    std::unordered_map<TermPtr, Rational, TermPtrHash, TermPtrEq> memo;

    Rational eval(const TermPtr& t) {
        if (t->is_var()) return Rational(1);
        auto it = memo.find(t);
        if (it != memo.end()) return it->second;
        Rational best(1);
        for (const auto& a : t->args()) best += eval(a);
        for (const auto& abs : this->abstractions) {
            auto sigma = match_term(abs.pattern(), t);
            if (!sigma) continue;
            if (abs.resonator()) {
                bool all_vars = true;
                for (const auto& [v, img] : *sigma)
                    if (!img->is_var()) { all_vars = false; break; }
                if (!all_vars) continue;
            }
            Rational cand = *abs.assigned_weight();
            // Each distinct pattern variable contributes its image once,
            // regardless of how often it occurs in the pattern.
            for (const auto& [v, img] : *sigma) cand += eval(img);
            if (cand < best) best = cand;
        }
        memo.emplace(t, best);
        return best;
    }
};

}  // namespace

Rational abstracted_weight(const TermPtr& t, std::span<const Abstraction> abstractions) {
    for (const auto& a : abstractions)
        if (!a.assigned_weight())
            throw std::invalid_argument("abstraction without an assigned weight");
    WeightCtx ctx{abstractions, {}};
    return ctx.eval(t);
}

Rational abstracted_weight(const Equation& e, std::span<const Abstraction> abstractions) {
    for (const auto& a : abstractions)
        if (!a.assigned_weight())
            throw std::invalid_argument("abstraction without an assigned weight");
    WeightCtx ctx{abstractions, {}};
    return ctx.eval(e.lhs) + ctx.eval(e.rhs);
}

bool resonator_matches(const Abstraction& a, const TermPtr& t) {
    auto sigma = match_term(a.pattern(), t);
    if (!sigma) return false;
    for (const auto& [v, img] : *sigma)
        if (!img->is_var()) return false;
    return true;
}

Equation to_definitional_axiom(const Abstraction& a, Symbol fresh) {
    std::vector<VarId> vars = distinct_vars(a.pattern());
    if (fresh.arity() != vars.size())
        throw std::invalid_argument("definitional symbol arity differs from pattern variable count");
    std::vector<Symbol> pattern_syms;
    collect_symbols(a.pattern(), pattern_syms);
    for (Symbol s : pattern_syms)
        if (s.name() == fresh.name())
            throw std::invalid_argument("definitional symbol clashes with a pattern symbol");
    std::vector<TermPtr> args;
    args.reserve(vars.size());
    for (VarId v : vars) args.push_back(Term::var(v));
    return Equation{Term::app(fresh, std::move(args)), a.pattern()};
}

bool compatible(const Abstraction& a, std::span<const Symbol> signature) {
    std::vector<Symbol> pattern_syms;
    collect_symbols(a.pattern(), pattern_syms);
    for (Symbol s : pattern_syms) {
        bool found = false;
        for (Symbol sig : signature) {
            if (sig.name() == s.name()) {
                if (sig.arity() != s.arity()) return false;
                found = true;
            }
        }
        if (!found) return false;
    }
    return true;
}

}  // namespace twitch
