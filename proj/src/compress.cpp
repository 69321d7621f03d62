#include "compress.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>
#include <unordered_set>

namespace twitch {

std::uint64_t Corpus::total_weight() const {
    std::uint64_t w = 0;
    for (const auto& t : terms) w += t->weight();
    return w;
}

std::vector<Symbol> Corpus::symbols() const {
    std::vector<Symbol> out;
    for (const auto& t : terms) collect_symbols(t, out);
    std::sort(out.begin(), out.end(), Symbol::name_less);
    return out;
}

Corpus make_corpus(std::span<const TermPtr> terms) {
    Corpus c;
    c.terms.reserve(terms.size());
    for (const auto& t : terms) c.terms.push_back(alpha_normalize(t));
    return c;
}

namespace {

std::uint32_t count_sites(const TermPtr& pattern, const TermPtr& t) {
    if (match_term(pattern, t)) return 1;  // outermost wins; skip the inside
    std::uint32_t n = 0;
    if (t->is_app())
        for (const auto& a : t->args()) n += count_sites(pattern, a);
    return n;
}

}  // namespace

std::uint32_t match_sites(const TermPtr& pattern, const Corpus& c) {
    std::uint32_t n = 0;
    for (const auto& t : c.terms) n += count_sites(pattern, t);
    return n;
}

TermPtr rewrite_term_with(const TermPtr& t, const TermPtr& pattern, Symbol fresh) {
    if (auto sigma = match_term(pattern, t)) {
        std::vector<TermPtr> args;
        for (VarId v : distinct_vars(pattern)) args.push_back(rewrite_term_with(*sigma->find(v), pattern, fresh));
        return Term::app(fresh, std::move(args));
    }
    if (t->is_var()) return t;
    std::vector<TermPtr> args;
    args.reserve(t->args().size());
    for (const auto& a : t->args()) args.push_back(rewrite_term_with(a, pattern, fresh));
    return Term::app(t->symbol(), std::move(args));
}

Corpus rewrite_with(const Corpus& c, const TermPtr& pattern, Symbol fresh) {
    if (fresh.arity() != distinct_vars(pattern).size())
        throw std::invalid_argument("fresh symbol arity differs from pattern variable count");
    Corpus out;
    out.terms.reserve(c.terms.size());
    for (const auto& t : c.terms) out.terms.push_back(rewrite_term_with(t, pattern, fresh));
    return out;
}

namespace {

Symbol scratch_symbol(unsigned arity) {
    return Symbol("_u" + std::to_string(arity), arity);
}

}  // namespace

std::uint64_t compression_utility(const Corpus& c, const TermPtr& pattern) {
    Symbol fresh = scratch_symbol(static_cast<unsigned>(distinct_vars(pattern).size()));
    std::uint64_t before = c.total_weight();
    std::uint64_t after = rewrite_with(c, pattern, fresh).total_weight();
    return before > after ? before - after : 0;
}

namespace {

// Upper bound on the utility of any refinement of the pattern: the sum of
// (weight - 1) over all (overlapping) positions the pattern matches. A
// refinement can only match a subset of these positions, and replacing a
// site can save at most its weight minus the fresh head.
std::uint64_t refinement_bound(const TermPtr& pattern, const Corpus& c) {
    struct Walk {
        const TermPtr& pattern;
        std::uint64_t total = 0;
        void go(const TermPtr& t) {
            if (match_term(pattern, t)) total += t->weight() - 1;
            if (t->is_app())
                for (const auto& a : t->args()) go(a);
        }
    };
    std::uint64_t total = 0;
    for (const auto& t : c.terms) {
        Walk w{pattern};
        w.go(t);
        total += w.total;
    }
    return total;
}

bool has_repeated_var(const TermPtr& pattern) {
    std::uint32_t occurrences = pattern->weight() - pattern->skeleton_weight();
    return occurrences > distinct_vars(pattern).size();
}

struct SearchResult {
    TermPtr pattern;  // null when nothing with positive utility exists
    std::uint64_t utility = 0;
    std::uint32_t sites = 0;
};

// Top-down refinement with branch and bound. Patterns start as single
// symbols applied to fresh holes; a refinement step expands one hole into a
// symbol with fresh holes or merges two holes into a shared variable.
SearchResult search_best(const Corpus& c, std::uint32_t max_arity) {
    SearchResult best;
    std::string best_key;

    std::vector<Symbol> symbols = c.symbols();
    if (symbols.empty()) return best;

    std::deque<TermPtr> worklist;
    std::unordered_set<std::string> visited;
    // Intermediate patterns may use a couple of extra holes; merges bring the
    // final variable count back under max_arity.
    std::uint32_t hole_limit = max_arity + 2;

    auto enqueue = [&](const TermPtr& p) {
        TermPtr norm = alpha_normalize(p);
        std::string key = to_string(norm);
        if (visited.insert(key).second) worklist.push_back(norm);
    };

    VarId next_hole = 0;
    for (Symbol s : symbols) {
        std::vector<TermPtr> holes;
        for (unsigned i = 0; i < s.arity(); ++i) holes.push_back(Term::var(next_hole++));
        enqueue(Term::app(s, std::move(holes)));
        next_hole = 0;
    }

    // Deterministic safety valve for pathological corpora.
    const std::size_t kMaxPops = 500000;
    std::size_t pops = 0;

    while (!worklist.empty() && pops < kMaxPops) {
        TermPtr p = worklist.front();
        worklist.pop_front();
        ++pops;

        std::uint64_t bound = refinement_bound(p, c);
        if (bound == 0 || bound <= best.utility) continue;

        std::vector<VarId> holes = distinct_vars(p);
        if (holes.size() <= max_arity) {
            std::uint32_t sites = match_sites(p, c);
            if (sites >= 2 || has_repeated_var(p)) {
                std::uint64_t u = compression_utility(c, p);
                std::string key = to_string(p);
                if (u > best.utility || (u == best.utility && u > 0 && key < best_key)) {
                    best = SearchResult{p, u, sites};
                    best_key = key;
                }
            }
        }

        // merges: identify two holes
        for (std::size_t i = 0; i < holes.size(); ++i)
            for (std::size_t j = i + 1; j < holes.size(); ++j) {
                Substitution merge;
                merge.bind(holes[j], Term::var(holes[i]));
                enqueue(merge.apply(p));
            }

        // expansions: replace one hole (every occurrence) by a symbol with fresh holes
        for (VarId h : holes) {
            for (Symbol s : symbols) {
                if (holes.size() - 1 + s.arity() > hole_limit) continue;
                VarId fresh_base = var_bound(p);
                std::vector<TermPtr> fresh;
                for (unsigned i = 0; i < s.arity(); ++i) fresh.push_back(Term::var(fresh_base + i));
                Substitution expand;
                expand.bind(h, Term::app(s, std::move(fresh)));
                enqueue(expand.apply(p));
            }
        }
    }
    return best;
}

// Inlines fresh symbols introduced by earlier iterations. Definitions are
// stored alpha-normalized so that variable id i is argument position i.
TermPtr inline_fresh(const TermPtr& t, const std::map<Symbol, TermPtr, bool (*)(Symbol, Symbol)>& defs) {
    if (t->is_var()) return t;
    std::vector<TermPtr> args;
    args.reserve(t->args().size());
    for (const auto& a : t->args()) args.push_back(inline_fresh(a, defs));
    auto it = defs.find(t->symbol());
    if (it == defs.end()) return Term::app(t->symbol(), std::move(args));
    Substitution sigma;
    for (VarId i = 0; i < args.size(); ++i) sigma.bind(i, args[i]);
    return sigma.apply(it->second);
}

}  // namespace

std::vector<ScoredPattern> compress(const Corpus& c, std::uint32_t top_n, std::uint32_t max_arity) {
    std::vector<ScoredPattern> out;
    if (top_n == 0 || max_arity == 0) return out;

    Corpus cur = c;
    std::map<Symbol, TermPtr, bool (*)(Symbol, Symbol)> defs(Symbol::name_less);

    for (std::uint32_t iter = 0; iter < top_n; ++iter) {
        SearchResult found = search_best(cur, max_arity);
        if (!found.pattern || found.utility == 0) break;

        TermPtr expanded = alpha_normalize(inline_fresh(found.pattern, defs));
        Symbol fresh("_c" + std::to_string(iter), static_cast<unsigned>(distinct_vars(found.pattern).size()));
        cur = rewrite_with(cur, found.pattern, fresh);
        defs.emplace(fresh, expanded);

        out.push_back(ScoredPattern{Abstraction(expanded), found.utility, found.sites});
    }
    return out;
}

}  // namespace twitch
