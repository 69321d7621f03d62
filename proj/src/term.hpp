#pragma once

#include "symbol.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace twitch {

using VarId = std::uint32_t;

class Term;
using TermPtr = std::shared_ptr<const Term>;

/**
 * Immutable first-order term: either a variable or an application whose
 * argument count equals the symbol arity. Weight, skeleton weight, node
 * count, depth and a structural hash are precomputed at construction.
 */
class Term {
public:
    static TermPtr var(VarId id);
    static TermPtr app(Symbol f, std::vector<TermPtr> args);

    bool is_var() const { return !sym_.valid(); }
    bool is_app() const { return sym_.valid(); }
    VarId var_id() const { return var_; }
    Symbol symbol() const { return sym_; }
    std::span<const TermPtr> args() const { return args_; }

    /// w(x) = 1; w(F(t1..tn)) = 1 + sum w(ti)
    std::uint32_t weight() const { return weight_; }
    /// weight with every variable counted as 0
    std::uint32_t skeleton_weight() const { return skel_weight_; }
    std::uint32_t node_count() const { return nodes_; }
    std::uint32_t depth() const { return depth_; }
    std::size_t hash() const { return hash_; }

private:
    Term() = default;

    Symbol sym_;
    VarId var_ = 0;
    std::vector<TermPtr> args_;
    std::uint32_t weight_ = 0, skel_weight_ = 0, nodes_ = 0, depth_ = 0;
    std::size_t hash_ = 0;
};

bool term_eq(const TermPtr& a, const TermPtr& b);
/// Total structural order: variables before applications; variables by id;
/// applications by symbol (arity, name) then argument-wise.
int term_cmp(const TermPtr& a, const TermPtr& b);

struct TermPtrHash {
    std::size_t operator()(const TermPtr& t) const { return t->hash(); }
};
struct TermPtrEq {
    bool operator()(const TermPtr& a, const TermPtr& b) const { return term_eq(a, b); }
};

/// |t| = number of function applications + number of unique variables.
std::uint32_t term_size(const TermPtr& t);

/// Distinct variables in first-occurrence (preorder) order.
std::vector<VarId> distinct_vars(const TermPtr& t);
bool contains_var(const TermPtr& t, VarId v);
void collect_symbols(const TermPtr& t, std::vector<Symbol>& out);

/// Path of 0-based argument indices; empty = root.
using Position = std::vector<std::uint32_t>;
/// Returns nullptr when the position does not exist.
TermPtr subterm_at(const TermPtr& t, const Position& pos);
TermPtr replace_at(const TermPtr& t, const Position& pos, const TermPtr& s);

class Substitution {
public:
    const TermPtr* find(VarId v) const;
    void bind(VarId v, TermPtr t);
    TermPtr apply(const TermPtr& t) const;
    bool empty() const { return bind_.empty(); }
    std::size_t size() const { return bind_.size(); }
    auto begin() const { return bind_.begin(); }
    auto end() const { return bind_.end(); }

private:
    std::vector<std::pair<VarId, TermPtr>> bind_;  // sorted by variable id
};

/// Matching: sigma with pattern.sigma == target, repeated pattern variables
/// must bind to identical subterms.
std::optional<Substitution> match_term(const TermPtr& pattern, const TermPtr& target);

/// Most general unifier with occurs check. Callers rename apart first.
std::optional<Substitution> unify(const TermPtr& t, const TermPtr& u);

enum class Kbo { GT, LT, EQ, INCOMPARABLE };

/// Knuth-Bendix ordering with all symbol weights 1, variable weight 1,
/// precedence by descending arity then ascending name.
Kbo kbo_compare(const TermPtr& t, const TermPtr& u);

/// Variables renumbered 0,1,2,... in order of first occurrence in a
/// left-to-right preorder walk.
TermPtr alpha_normalize(const TermPtr& t);
/// Adds a fixed offset to every variable id (used to rename rules apart).
TermPtr shift_vars(const TermPtr& t, VarId offset);
/// 0 when the term is ground, otherwise max variable id + 1.
VarId var_bound(const TermPtr& t);

struct Equation {
    TermPtr lhs, rhs;

    std::uint32_t weight() const { return lhs->weight() + rhs->weight(); }
    /// |l=r| = |l| + |r|
    std::uint32_t size() const { return term_size(lhs) + term_size(rhs); }
};

/// Jointly alpha-normalizes (first, second) sharing one renaming.
std::pair<TermPtr, TermPtr> alpha_normalize_pair(const TermPtr& first, const TermPtr& second);

/// Canonical representative under variable renaming and orientation swap:
/// equations are unordered pairs for identity purposes.
Equation equation_canonical(const Equation& e);
bool equation_equal(const Equation& a, const Equation& b);

std::string to_string(const TermPtr& t);
std::string to_string(const Equation& e);

}  // namespace twitch
