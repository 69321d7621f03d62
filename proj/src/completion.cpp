#include "completion.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <stdexcept>

namespace twitch {

OrientResult orient(const Equation& e) {
    switch (kbo_compare(e.lhs, e.rhs)) {
        case Kbo::GT: return {OrientResult::Kind::Oriented, e.lhs, e.rhs};
        case Kbo::LT: return {OrientResult::Kind::Oriented, e.rhs, e.lhs};
        case Kbo::EQ: return {OrientResult::Kind::Trivial, e.lhs, e.rhs};
        default: return {OrientResult::Kind::Unoriented, e.lhs, e.rhs};
    }
}

namespace {

struct Directed {
    TermPtr from, to;
    bool reversed;
};

std::vector<Directed> directions(const TermPtr& lhs, const TermPtr& rhs, bool oriented) {
    std::vector<Directed> out{{lhs, rhs, false}};
    if (!oriented) out.push_back({rhs, lhs, true});
    return out;
}

void non_var_positions(const TermPtr& t, Position& here, std::vector<Position>& out) {
    if (t->is_var()) return;
    out.push_back(here);
    for (std::uint32_t i = 0; i < t->args().size(); ++i) {
        here.push_back(i);
        non_var_positions(t->args()[i], here, out);
        here.pop_back();
    }
}

// Restricts the mgu to one rule's variables, translating back from the
// shifted variable space when offset > 0. Non-identity bindings only, except
// that shifted variables always get an explicit binding.
Substitution project_subst(const Substitution& mgu, const TermPtr& lhs, const TermPtr& rhs, VarId offset) {
    Substitution out;
    std::vector<VarId> vars = distinct_vars(lhs);
    for (VarId v : distinct_vars(rhs))
        if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    for (VarId v : vars) {
        const TermPtr* img = mgu.find(v + offset);
        if (img) {
            out.bind(v, *img);
        } else if (offset != 0) {
            out.bind(v, Term::var(v + offset));
        }
    }
    return out;
}

}  // namespace

std::vector<CriticalPair> critical_pairs(const Rule& outer, const Rule& inner) {
    std::vector<CriticalPair> out;
    VarId offset = std::max(var_bound(outer.lhs), var_bound(outer.rhs));
    TermPtr inner_l = shift_vars(inner.lhs, offset);
    TermPtr inner_r = shift_vars(inner.rhs, offset);

    for (const Directed& od : directions(outer.lhs, outer.rhs, outer.oriented)) {
        std::vector<Position> positions;
        Position here;
        non_var_positions(od.from, here, positions);
        for (const Position& pos : positions) {
            TermPtr sub = subterm_at(od.from, pos);
            for (const Directed& id : directions(inner_l, inner_r, inner.oriented)) {
                auto mgu = unify(sub, id.from);
                if (!mgu) continue;
                TermPtr peak = mgu->apply(od.from);
                TermPtr p = mgu->apply(od.to);
                if (!outer.oriented) {
                    Kbo c = kbo_compare(peak, p);
                    if (c == Kbo::LT || c == Kbo::EQ) continue;
                }
                TermPtr inner_from_inst = mgu->apply(id.from);
                TermPtr inner_to_inst = mgu->apply(id.to);
                if (!inner.oriented) {
                    Kbo c = kbo_compare(inner_from_inst, inner_to_inst);
                    if (c == Kbo::LT || c == Kbo::EQ) continue;
                }
                TermPtr q = replace_at(peak, pos, inner_to_inst);
                CriticalPair cp;
                cp.eq = Equation{p, q};
                cp.peak = peak;
                cp.pos = pos;
                cp.outer_id = outer.id;
                cp.inner_id = inner.id;
                cp.outer_reversed = od.reversed;
                cp.inner_reversed = id.reversed;
                cp.outer_subst = project_subst(*mgu, outer.lhs, outer.rhs, 0);
                cp.inner_subst = project_subst(*mgu, inner.lhs, inner.rhs, offset);
                out.push_back(std::move(cp));
            }
        }
    }
    return out;
}

std::vector<Equation> critical_pair_equations(const Rule& outer, const Rule& inner) {
    std::vector<Equation> out;
    for (const auto& cp : critical_pairs(outer, inner)) out.push_back(cp.eq);
    return out;
}

TermPtr normalize(const TermPtr& t, std::span<const Rule> rules, std::vector<RewriteStep>* trace) {
    struct Walker {
        std::span<const Rule> rules;
        std::vector<RewriteStep>* trace;

        TermPtr norm(const TermPtr& t, Position& prefix) {
            TermPtr cur = t;
            for (;;) {
                if (cur->is_app() && !cur->args().empty()) {
                    std::vector<TermPtr> args(cur->args().begin(), cur->args().end());
                    bool changed = false;
                    for (std::uint32_t i = 0; i < args.size(); ++i) {
                        prefix.push_back(i);
                        TermPtr na = norm(args[i], prefix);
                        prefix.pop_back();
                        changed = changed || na.get() != args[i].get();
                        args[i] = na;
                    }
                    if (changed) cur = Term::app(cur->symbol(), std::move(args));
                }
                bool stepped = false;
                for (const Rule& r : rules) {
                    if (auto sigma = match_term(r.lhs, cur)) {
                        // Unoriented equations need the instantiated step to
                        // decrease; extra variables on the far side never fire.
                        bool rhs_closed = true;
                        if (!r.oriented) {
                            for (VarId v : distinct_vars(r.rhs))
                                if (!sigma->find(v)) { rhs_closed = false; break; }
                        }
                        if (rhs_closed) {
                            TermPtr to = sigma->apply(r.rhs);
                            if (r.oriented || kbo_compare(cur, to) == Kbo::GT) {
                                if (trace) trace->push_back({r.id, prefix, *sigma, false});
                                cur = to;
                                stepped = true;
                                break;
                            }
                        }
                    }
                    if (!r.oriented) {
                        if (auto sigma = match_term(r.rhs, cur)) {
                            bool lhs_closed = true;
                            for (VarId v : distinct_vars(r.lhs))
                                if (!sigma->find(v)) { lhs_closed = false; break; }
                            if (lhs_closed) {
                                TermPtr to = sigma->apply(r.lhs);
                                if (kbo_compare(cur, to) == Kbo::GT) {
                                    if (trace) trace->push_back({r.id, prefix, *sigma, true});
                                    cur = to;
                                    stepped = true;
                                    break;
                                }
                            }
                        }
                    }
                }
                if (!stepped) return cur;
            }
        }
    };
    Walker w{rules, trace};
    Position prefix;
    return w.norm(t, prefix);
}

Prover::Prover(Problem problem, std::vector<Abstraction> abstractions, Limits limits)
    : problem_(std::move(problem)), abstractions_(std::move(abstractions)), limits_(limits) {
    for (const auto& a : abstractions_)
        if (!a.assigned_weight())
            throw std::invalid_argument("prover abstractions must carry assigned weights");
}

void Prover::push_passive(Equation eq, ProofPtr proof, bool from_axiom) {
    Rational score = abstracted_weight(eq, abstractions_);
    passive_.push(Passive{std::move(eq), std::move(proof), from_axiom, score, next_seq_++});
}

std::vector<Rule> Prover::rules_snapshot() const {
    std::vector<Rule> out;
    out.reserve(active_.size());
    for (const auto& [id, r] : active_) out.push_back(r);
    return out;
}

const Rule* Prover::find_rule(RuleId id) const {
    auto it = active_.find(id);
    return it == active_.end() ? nullptr : &it->second;
}

namespace {

std::vector<RewriteStep> flip_trace(const std::vector<RewriteStep>& trace) {
    std::vector<RewriteStep> out(trace.rbegin(), trace.rend());
    for (auto& st : out) st.reversed = !st.reversed;
    return out;
}

}  // namespace

void Prover::add_sub_lemmas(std::map<RuleId, ProofPtr>& subs, const std::vector<RewriteStep>& trace) const {
    for (const auto& st : trace) {
        if (subs.count(st.rule_id)) continue;
        if (st.rule_id < axiom_proofs_.size()) {
            subs.emplace(st.rule_id, axiom_proofs_[st.rule_id]);
        } else if (const Rule* r = find_rule(st.rule_id)) {
            subs.emplace(st.rule_id, r->proof);
        } else {
            throw std::logic_error("trace cites a rule that is no longer active");
        }
    }
}

ProofPtr Prover::extend_proof(const Equation& conclusion, ProofPtr base,
                              const std::vector<RewriteStep>& lhs_trace,
                              const std::vector<RewriteStep>& rhs_trace) const {
    if (lhs_trace.empty() && rhs_trace.empty()) return base;

    auto rule_equation = [&](RuleId id) -> Equation {
        if (id < axiom_proofs_.size()) return axiom_proofs_[id]->conclusion;
        const Rule* r = find_rule(id);
        if (!r) throw std::logic_error("proof step cites a rule that is no longer active");
        return r->equation();
    };
    auto apply_step = [&](const TermPtr& t, const RewriteStep& st) -> TermPtr {
        Equation e = rule_equation(st.rule_id);
        TermPtr to = st.reversed ? e.lhs : e.rhs;
        return replace_at(t, st.pos, st.subst.apply(to));
    };

    auto p = std::make_shared<Proof>();
    p->conclusion = conclusion;
    p->sub_lemmas = base->sub_lemmas;
    if (base->is_axiom)
        for (const auto& st : base->steps) p->sub_lemmas[st.rule_id] = base;

    p->chain.push_back(conclusion.lhs);
    for (const RewriteStep& st : flip_trace(lhs_trace)) {
        TermPtr next = apply_step(p->chain.back(), st);
        p->steps.push_back(Justification{st.rule_id, st.pos, st.subst, st.reversed});
        p->chain.push_back(next);
    }
    assert(term_eq(p->chain.back(), base->conclusion.lhs));
    for (std::size_t i = 0; i + 1 < base->chain.size(); ++i) {
        p->steps.push_back(base->steps[i]);
        p->chain.push_back(base->chain[i + 1]);
    }
    for (const RewriteStep& st : rhs_trace) {
        TermPtr next = apply_step(p->chain.back(), st);
        p->steps.push_back(Justification{st.rule_id, st.pos, st.subst, st.reversed});
        p->chain.push_back(next);
    }
    assert(term_eq(p->chain.back(), conclusion.rhs));

    add_sub_lemmas(p->sub_lemmas, lhs_trace);
    add_sub_lemmas(p->sub_lemmas, rhs_trace);
    return p;
}

namespace {

ProofPtr reverse_proof(const ProofPtr& p) {
    auto q = std::make_shared<Proof>();
    q->conclusion = Equation{p->conclusion.rhs, p->conclusion.lhs};
    q->chain.assign(p->chain.rbegin(), p->chain.rend());
    for (auto it = p->steps.rbegin(); it != p->steps.rend(); ++it) {
        Justification j = *it;
        j.reversed = !j.reversed;
        q->steps.push_back(std::move(j));
    }
    q->sub_lemmas = p->sub_lemmas;
    q->is_axiom = p->is_axiom;
    return q;
}

// True when the rule can rewrite anywhere inside t (instance-level check for
// unoriented rules).
bool can_rewrite(const Rule& r, const TermPtr& t) {
    auto applicable_at = [&](const TermPtr& s) {
        if (auto sigma = match_term(r.lhs, s)) {
            if (r.oriented) return true;
            bool closed = true;
            for (VarId v : distinct_vars(r.rhs))
                if (!sigma->find(v)) { closed = false; break; }
            if (closed && kbo_compare(s, sigma->apply(r.rhs)) == Kbo::GT) return true;
        }
        if (!r.oriented) {
            if (auto sigma = match_term(r.rhs, s)) {
                bool closed = true;
                for (VarId v : distinct_vars(r.lhs))
                    if (!sigma->find(v)) { closed = false; break; }
                if (closed && kbo_compare(s, sigma->apply(r.lhs)) == Kbo::GT) return true;
            }
        }
        return false;
    };
    struct Walk {
        const decltype(applicable_at)& at;
        bool go(const TermPtr& s) {
            if (at(s)) return true;
            if (s->is_app())
                for (const auto& a : s->args())
                    if (go(a)) return true;
            return false;
        }
    };
    Walk w{applicable_at};
    return w.go(t);
}

std::string equation_key(const Equation& e) {
    Equation c = equation_canonical(e);
    return to_string(c.lhs) + "=" + to_string(c.rhs);
}

}  // namespace

void Prover::interreduce(const Rule& new_rule) {
    std::vector<RuleId> ids;
    for (const auto& [id, r] : active_)
        if (id != new_rule.id) ids.push_back(id);

    for (RuleId id : ids) {
        Rule& s = active_.at(id);
        bool lhs_red = can_rewrite(new_rule, s.lhs);
        bool rhs_red = can_rewrite(new_rule, s.rhs);
        if (lhs_red || (!s.oriented && rhs_red)) {
            seen_equations_.erase(equation_key(s.equation()));
            Passive demoted{s.equation(), s.proof, s.from_axiom, Rational(0), 0};
            active_.erase(id);
            push_passive(std::move(demoted.eq), std::move(demoted.proof), demoted.from_axiom);
        } else if (rhs_red) {
            seen_equations_.erase(equation_key(s.equation()));
            std::vector<Rule> rules = rules_snapshot();
            std::vector<RewriteStep> trace;
            TermPtr nf = normalize(s.rhs, rules, &trace);
            Equation eq{s.lhs, nf};
            s.proof = extend_proof(eq, s.proof, {}, trace);
            s.rhs = nf;
            seen_equations_.insert(equation_key(s.equation()));
        }
    }
}

void Prover::generate_cps(const Rule& new_rule) {
    std::vector<Rule> partners = rules_snapshot();
    for (const Rule& s : partners) {
        for (int dir = 0; dir < 2; ++dir) {
            if (dir == 1 && s.id == new_rule.id) continue;
            const Rule& outer = dir == 0 ? new_rule : s;
            const Rule& inner = dir == 0 ? s : new_rule;
            for (CriticalPair& cp : critical_pairs(outer, inner)) {
                ++stats_.generated_cps;
                if (term_eq(cp.eq.lhs, cp.eq.rhs)) continue;  // trivial
                auto proof = std::make_shared<Proof>();
                proof->conclusion = cp.eq;
                proof->chain = {cp.eq.lhs, cp.peak, cp.eq.rhs};
                proof->steps = {
                    Justification{cp.outer_id, {}, cp.outer_subst, !cp.outer_reversed},
                    Justification{cp.inner_id, cp.pos, cp.inner_subst, cp.inner_reversed},
                };
                const Rule* outer_rule = find_rule(cp.outer_id);
                const Rule* inner_rule = find_rule(cp.inner_id);
                assert(outer_rule && inner_rule);
                proof->sub_lemmas.emplace(cp.outer_id, outer_rule->proof);
                proof->sub_lemmas.emplace(cp.inner_id, inner_rule->proof);
                push_passive(cp.eq, proof, false);
            }
        }
    }
}

std::optional<ProofPtr> Prover::goal_proof() {
    std::vector<Rule> rules = rules_snapshot();
    std::vector<RewriteStep> trace_l, trace_r;
    TermPtr nl = normalize(problem_.goal.lhs, rules, &trace_l);
    TermPtr nr = normalize(problem_.goal.rhs, rules, &trace_r);
    if (!term_eq(nl, nr)) return std::nullopt;
    auto base = std::make_shared<Proof>();
    base->conclusion = Equation{nl, nl};
    base->chain = {nl};
    return extend_proof(problem_.goal, base, flip_trace(trace_l), flip_trace(trace_r));
}

Outcome Prover::run() {
    using Clock = std::chrono::steady_clock;
    auto start = Clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };
    auto make_cost = [&] { return Cost{elapsed(), stats_.selected_cps}; };

    axiom_proofs_.clear();
    for (std::size_t i = 0; i < problem_.axioms.size(); ++i)
        axiom_proofs_.push_back(Proof::axiom(static_cast<RuleId>(i), problem_.axioms[i]));
    next_id_ = static_cast<RuleId>(problem_.axioms.size());

    for (std::size_t i = 0; i < problem_.axioms.size(); ++i)
        push_passive(problem_.axioms[i], axiom_proofs_[i], true);

    if (auto gp = goal_proof()) return Outcome{OutcomeKind::Proved, *gp, make_cost(), false};

    while (!passive_.empty()) {
        if (limits_.wall_seconds && elapsed() >= *limits_.wall_seconds)
            return Outcome{OutcomeKind::ResourceOut, nullptr, make_cost(), true};
        if (limits_.selected_cps && stats_.selected_cps >= *limits_.selected_cps)
            return Outcome{OutcomeKind::ResourceOut, nullptr, make_cost(), false};

        Passive p = passive_.top();
        passive_.pop();
        ++stats_.selected_cps;

        std::vector<Rule> rules = rules_snapshot();
        std::vector<RewriteStep> trace_l, trace_r;
        TermPtr nl = normalize(p.eq.lhs, rules, &trace_l);
        TermPtr nr = normalize(p.eq.rhs, rules, &trace_r);
        if (term_eq(nl, nr)) continue;

        Equation eq{nl, nr};
        std::string key = equation_key(eq);
        if (seen_equations_.count(key)) continue;

        ProofPtr proof = extend_proof(eq, p.proof, trace_l, trace_r);
        OrientResult o = orient(eq);
        if (o.kind == OrientResult::Kind::Trivial) continue;

        Rule rule;
        rule.id = next_id_++;
        rule.oriented = o.kind == OrientResult::Kind::Oriented;
        rule.lhs = o.lhs;
        rule.rhs = o.rhs;
        rule.from_axiom = p.from_axiom;
        rule.proof = term_eq(o.lhs, eq.lhs) ? proof : reverse_proof(proof);
        active_.emplace(rule.id, rule);
        seen_equations_.insert(key);
        ++stats_.rules_added;

        interreduce(rule);
        if (const Rule* live = find_rule(rule.id)) {
            generate_cps(*live);
        }
        if (auto gp = goal_proof()) return Outcome{OutcomeKind::Proved, *gp, make_cost(), false};
    }
    return Outcome{OutcomeKind::Saturated, nullptr, make_cost(), false};
}

std::vector<Rule> Prover::active_rules() const { return rules_snapshot(); }

std::vector<Lemma> Prover::lemmas() const {
    std::vector<Lemma> out;
    for (const auto& [id, r] : active_)
        if (!r.from_axiom) out.push_back(Lemma{id, r.equation(), r.proof});
    return out;
}

Outcome complete(const Problem& problem, std::span<const Abstraction> abstractions, const Limits& limits) {
    Prover prover(problem, std::vector<Abstraction>(abstractions.begin(), abstractions.end()), limits);
    return prover.run();
}

}  // namespace twitch
