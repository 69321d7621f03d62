#include "term.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace twitch {

namespace {

std::size_t hash_combine(std::size_t a, std::size_t b) {
    return a ^ (b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2));
}

}  // namespace

TermPtr Term::var(VarId id) {
    auto t = std::shared_ptr<Term>(new Term());
    t->var_ = id;
    t->weight_ = 1;
    t->skel_weight_ = 0;
    t->nodes_ = 1;
    t->depth_ = 1;
    t->hash_ = hash_combine(0x5f5f, std::hash<VarId>{}(id));
    return t;
}

TermPtr Term::app(Symbol f, std::vector<TermPtr> args) {
    if (!f.valid()) throw std::invalid_argument("invalid symbol");
    if (args.size() != f.arity())
        throw std::invalid_argument("arity mismatch for symbol " + std::string(f.name()));
    auto t = std::shared_ptr<Term>(new Term());
    t->sym_ = f;
    t->args_ = std::move(args);
    t->weight_ = 1;
    t->skel_weight_ = 1;
    t->nodes_ = 1;
    t->depth_ = 1;
    std::size_t h = hash_combine(0xa9a9, f.hash());
    for (const auto& a : t->args_) {
        t->weight_ += a->weight();
        t->skel_weight_ += a->skeleton_weight();
        t->nodes_ += a->node_count();
        t->depth_ = std::max(t->depth_, a->depth() + 1);
        h = hash_combine(h, a->hash());
    }
    t->hash_ = h;
    return t;
}

bool term_eq(const TermPtr& a, const TermPtr& b) {
    if (a.get() == b.get()) return true;
    if (a->hash() != b->hash()) return false;
    if (a->is_var()) return b->is_var() && a->var_id() == b->var_id();
    if (!b->is_app() || a->symbol() != b->symbol()) return false;
    for (std::size_t i = 0; i < a->args().size(); ++i)
        if (!term_eq(a->args()[i], b->args()[i])) return false;
    return true;
}

int term_cmp(const TermPtr& a, const TermPtr& b) {
    if (a.get() == b.get()) return 0;
    if (a->is_var() != b->is_var()) return a->is_var() ? -1 : 1;
    if (a->is_var()) {
        if (a->var_id() != b->var_id()) return a->var_id() < b->var_id() ? -1 : 1;
        return 0;
    }
    if (a->symbol() != b->symbol()) {
        Symbol f = a->symbol(), g = b->symbol();
        if (f.arity() != g.arity()) return f.arity() < g.arity() ? -1 : 1;
        return f.name() < g.name() ? -1 : 1;
    }
    for (std::size_t i = 0; i < a->args().size(); ++i) {
        int c = term_cmp(a->args()[i], b->args()[i]);
        if (c != 0) return c;
    }
    return 0;
}

namespace {

void collect_vars_rec(const TermPtr& t, std::vector<VarId>& seen) {
    if (t->is_var()) {
        if (std::find(seen.begin(), seen.end(), t->var_id()) == seen.end()) seen.push_back(t->var_id());
        return;
    }
    for (const auto& a : t->args()) collect_vars_rec(a, seen);
}

}  // namespace

std::vector<VarId> distinct_vars(const TermPtr& t) {
    std::vector<VarId> out;
    collect_vars_rec(t, out);
    return out;
}

std::uint32_t term_size(const TermPtr& t) {
    std::uint32_t apps = t->node_count() - (t->weight() - t->skeleton_weight());
    return apps + static_cast<std::uint32_t>(distinct_vars(t).size());
}

bool contains_var(const TermPtr& t, VarId v) {
    if (t->is_var()) return t->var_id() == v;
    for (const auto& a : t->args())
        if (contains_var(a, v)) return true;
    return false;
}

void collect_symbols(const TermPtr& t, std::vector<Symbol>& out) {
    if (t->is_var()) return;
    if (std::find(out.begin(), out.end(), t->symbol()) == out.end()) out.push_back(t->symbol());
    for (const auto& a : t->args()) collect_symbols(a, out);
}

TermPtr subterm_at(const TermPtr& t, const Position& pos) {
    TermPtr cur = t;
    for (auto i : pos) {
        if (cur->is_var() || i >= cur->args().size()) return nullptr;
        cur = cur->args()[i];
    }
    return cur;
}

TermPtr replace_at(const TermPtr& t, const Position& pos, const TermPtr& s) {
    if (pos.empty()) return s;
    std::vector<TermPtr> args(t->args().begin(), t->args().end());
    Position rest(pos.begin() + 1, pos.end());
    args[pos[0]] = replace_at(args[pos[0]], rest, s);
    return Term::app(t->symbol(), std::move(args));
}

const TermPtr* Substitution::find(VarId v) const {
    auto it = std::lower_bound(bind_.begin(), bind_.end(), v,
                               [](const auto& p, VarId x) { return p.first < x; });
    if (it != bind_.end() && it->first == v) return &it->second;
    return nullptr;
}

void Substitution::bind(VarId v, TermPtr t) {
    auto it = std::lower_bound(bind_.begin(), bind_.end(), v,
                               [](const auto& p, VarId x) { return p.first < x; });
    if (it != bind_.end() && it->first == v) {
        it->second = std::move(t);
    } else {
        bind_.insert(it, {v, std::move(t)});
    }
}

TermPtr Substitution::apply(const TermPtr& t) const {
    if (t->is_var()) {
        const TermPtr* b = find(t->var_id());
        return b ? *b : t;
    }
    bool changed = false;
    std::vector<TermPtr> args;
    args.reserve(t->args().size());
    for (const auto& a : t->args()) {
        TermPtr na = apply(a);
        changed = changed || na.get() != a.get();
        args.push_back(std::move(na));
    }
    if (!changed) return t;
    return Term::app(t->symbol(), std::move(args));
}

namespace {

bool match_rec(const TermPtr& pattern, const TermPtr& target, Substitution& sigma) {
    if (pattern->is_var()) {
        if (const TermPtr* b = sigma.find(pattern->var_id())) return term_eq(*b, target);
        sigma.bind(pattern->var_id(), target);
        return true;
    }
    if (!target->is_app() || pattern->symbol() != target->symbol()) return false;
    for (std::size_t i = 0; i < pattern->args().size(); ++i)
        if (!match_rec(pattern->args()[i], target->args()[i], sigma)) return false;
    return true;
}

}  // namespace

std::optional<Substitution> match_term(const TermPtr& pattern, const TermPtr& target) {
    Substitution sigma;
    if (!match_rec(pattern, target, sigma)) return std::nullopt;
    return sigma;
}

namespace {

// Triangular bindings: images may themselves contain bound variables.
struct UnifyCtx {
    std::unordered_map<VarId, TermPtr> bind;

    TermPtr walk(TermPtr t) const {
        while (t->is_var()) {
            auto it = bind.find(t->var_id());
            if (it == bind.end()) break;
            t = it->second;
        }
        return t;
    }

    bool occurs(VarId v, const TermPtr& t0) const {
        TermPtr t = walk(t0);
        if (t->is_var()) return t->var_id() == v;
        for (const auto& a : t->args())
            if (occurs(v, a)) return true;
        return false;
    }

    bool unify(const TermPtr& a0, const TermPtr& b0) {
        TermPtr a = walk(a0), b = walk(b0);
        if (a->is_var() && b->is_var() && a->var_id() == b->var_id()) return true;
        if (a->is_var()) {
            if (occurs(a->var_id(), b)) return false;
            bind.emplace(a->var_id(), b);
            return true;
        }
        if (b->is_var()) {
            if (occurs(b->var_id(), a)) return false;
            bind.emplace(b->var_id(), a);
            return true;
        }
        if (a->symbol() != b->symbol()) return false;
        for (std::size_t i = 0; i < a->args().size(); ++i)
            if (!unify(a->args()[i], b->args()[i])) return false;
        return true;
    }

    TermPtr resolve(const TermPtr& t) const {
        TermPtr w = walk(t);
        if (w->is_var()) return w;
        std::vector<TermPtr> args;
        args.reserve(w->args().size());
        for (const auto& a : w->args()) args.push_back(resolve(a));
        return Term::app(w->symbol(), std::move(args));
    }
};

}  // namespace

std::optional<Substitution> unify(const TermPtr& t, const TermPtr& u) {
    UnifyCtx ctx;
    if (!ctx.unify(t, u)) return std::nullopt;
    Substitution sigma;
    for (const auto& [v, img] : ctx.bind) sigma.bind(v, ctx.resolve(img));
    return sigma;
}

namespace {

void var_counts(const TermPtr& t, std::map<VarId, std::uint32_t>& counts) {
    if (t->is_var()) {
        ++counts[t->var_id()];
        return;
    }
    for (const auto& a : t->args()) var_counts(a, counts);
}

bool counts_ge(const std::map<VarId, std::uint32_t>& big, const std::map<VarId, std::uint32_t>& small) {
    for (const auto& [v, n] : small) {
        auto it = big.find(v);
        if (it == big.end() || it->second < n) return false;
    }
    return true;
}

bool kbo_gt(const TermPtr& t, const TermPtr& u) {
    if (t->is_var()) return false;
    if (u->is_var()) return contains_var(t, u->var_id());
    std::map<VarId, std::uint32_t> ct, cu;
    var_counts(t, ct);
    var_counts(u, cu);
    if (!counts_ge(ct, cu)) return false;
    if (t->weight() != u->weight()) return t->weight() > u->weight();
    if (t->symbol() != u->symbol()) return Symbol::prec_greater(t->symbol(), u->symbol());
    for (std::size_t i = 0; i < t->args().size(); ++i) {
        if (!term_eq(t->args()[i], u->args()[i])) return kbo_gt(t->args()[i], u->args()[i]);
    }
    return false;
}

}  // namespace

Kbo kbo_compare(const TermPtr& t, const TermPtr& u) {
    if (term_eq(t, u)) return Kbo::EQ;
    if (kbo_gt(t, u)) return Kbo::GT;
    if (kbo_gt(u, t)) return Kbo::LT;
    return Kbo::INCOMPARABLE;
}

namespace {

TermPtr rename_rec(const TermPtr& t, std::unordered_map<VarId, VarId>& map, VarId& next) {
    if (t->is_var()) {
        auto it = map.find(t->var_id());
        if (it == map.end()) it = map.emplace(t->var_id(), next++).first;
        return it->second == t->var_id() ? t : Term::var(it->second);
    }
    bool changed = false;
    std::vector<TermPtr> args;
    args.reserve(t->args().size());
    for (const auto& a : t->args()) {
        TermPtr na = rename_rec(a, map, next);
        changed = changed || na.get() != a.get();
        args.push_back(std::move(na));
    }
    return changed ? Term::app(t->symbol(), std::move(args)) : t;
}

}  // namespace

TermPtr alpha_normalize(const TermPtr& t) {
    std::unordered_map<VarId, VarId> map;
    VarId next = 0;
    return rename_rec(t, map, next);
}

std::pair<TermPtr, TermPtr> alpha_normalize_pair(const TermPtr& first, const TermPtr& second) {
    std::unordered_map<VarId, VarId> map;
    VarId next = 0;
    TermPtr a = rename_rec(first, map, next);
    TermPtr b = rename_rec(second, map, next);
    return {a, b};
}

TermPtr shift_vars(const TermPtr& t, VarId offset) {
    if (offset == 0) return t;
    if (t->is_var()) return Term::var(t->var_id() + offset);
    std::vector<TermPtr> args;
    args.reserve(t->args().size());
    for (const auto& a : t->args()) args.push_back(shift_vars(a, offset));
    return Term::app(t->symbol(), std::move(args));
}

VarId var_bound(const TermPtr& t) {
    VarId bound = 0;
    for (VarId v : distinct_vars(t)) bound = std::max(bound, v + 1);
    return bound;
}

Equation equation_canonical(const Equation& e) {
    auto [l1, r1] = alpha_normalize_pair(e.lhs, e.rhs);
    auto [r2, l2] = alpha_normalize_pair(e.rhs, e.lhs);
    int c = term_cmp(l1, r2);
    if (c == 0) c = term_cmp(r1, l2);
    return c <= 0 ? Equation{l1, r1} : Equation{r2, l2};
}

bool equation_equal(const Equation& a, const Equation& b) {
    Equation ca = equation_canonical(a), cb = equation_canonical(b);
    return term_eq(ca.lhs, cb.lhs) && term_eq(ca.rhs, cb.rhs);
}

namespace {

void print_rec(const TermPtr& t, std::string& out) {
    if (t->is_var()) {
        out += "X";
        out += std::to_string(t->var_id());
        return;
    }
    out += t->symbol().name();
    if (!t->args().empty()) {
        out += "(";
        for (std::size_t i = 0; i < t->args().size(); ++i) {
            if (i) out += ",";
            print_rec(t->args()[i], out);
        }
        out += ")";
    }
}

}  // namespace

std::string to_string(const TermPtr& t) {
    std::string out;
    print_rec(t, out);
    return out;
}

std::string to_string(const Equation& e) {
    return to_string(e.lhs) + " = " + to_string(e.rhs);
}

}  // namespace twitch
