#include "lambda.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

namespace twitch {

namespace {

std::vector<std::string> binder_names(std::size_t n, const std::vector<Symbol>& taken) {
    static const char* base[] = {"x", "y", "z", "u", "v", "w"};
    std::vector<std::string> names;
    std::size_t round = 0;
    while (names.size() < n) {
        for (const char* b : base) {
            std::string name = round == 0 ? std::string(b) : std::string(b) + std::to_string(round);
            bool clash = std::any_of(taken.begin(), taken.end(),
                                     [&](Symbol s) { return s.name() == name; });
            if (!clash) names.push_back(name);
            if (names.size() == n) break;
        }
        ++round;
    }
    return names;
}

void render_body(const TermPtr& t, const std::map<VarId, std::string>& names, std::string& out) {
    if (t->is_var()) {
        out += names.at(t->var_id());
        return;
    }
    if (t->args().empty()) {
        out += t->symbol().name();
        return;
    }
    out += "(";
    out += t->symbol().name();
    for (const auto& a : t->args()) {
        out += " ";
        render_body(a, names, out);
    }
    out += ")";
}

}  // namespace

std::string to_lambda(const TermPtr& t) {
    std::vector<VarId> vars = distinct_vars(t);
    std::vector<Symbol> syms;
    collect_symbols(t, syms);
    std::vector<std::string> names = binder_names(vars.size(), syms);
    std::map<VarId, std::string> name_of;
    for (std::size_t i = 0; i < vars.size(); ++i) name_of[vars[i]] = names[i];

    std::string body;
    render_body(t, name_of, body);
    std::string out;
    for (std::size_t i = 0; i < vars.size(); ++i) out += "(lam " + names[i] + " ";
    out += body;
    out.append(vars.size(), ')');
    return out;
}

namespace {

struct Sexp {
    // Either an atom or a list.
    std::string atom;
    std::vector<Sexp> items;
    bool is_atom = false;
};

struct Lexer {
    const std::string& s;
    std::size_t i = 0;

    void skip_ws() {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\n' || s[i] == '\r')) ++i;
    }
    bool eof() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return s[i];
    }
};

Sexp parse_sexp(Lexer& lx) {
    if (lx.eof()) throw std::invalid_argument("lambda syntax error: unexpected end of input");
    char c = lx.peek();
    if (c == ')') throw std::invalid_argument("lambda syntax error: unexpected ')'");
    if (c == '(') {
        ++lx.i;
        Sexp list;
        while (true) {
            if (lx.eof()) throw std::invalid_argument("lambda syntax error: missing ')'");
            if (lx.peek() == ')') {
                ++lx.i;
                break;
            }
            list.items.push_back(parse_sexp(lx));
        }
        if (list.items.empty()) throw std::invalid_argument("lambda syntax error: empty application");
        return list;
    }
    Sexp atom;
    atom.is_atom = true;
    while (lx.i < lx.s.size() && lx.s[lx.i] != '(' && lx.s[lx.i] != ')' && lx.s[lx.i] != ' ' &&
           lx.s[lx.i] != '\t' && lx.s[lx.i] != '\n' && lx.s[lx.i] != '\r')
        atom.atom += lx.s[lx.i++];
    return atom;
}

bool is_hole(const std::string& a, VarId& k) {
    if (a.size() != 2 || a[0] != '#' || a[1] < '0' || a[1] > '9') return false;
    k = static_cast<VarId>(a[1] - '0');
    return true;
}

struct Converter {
    std::span<const Symbol> signature;
    std::map<std::string, unsigned> observed_arity;
    bool higher_order = false;

    TermPtr convert(const Sexp& e) {
        if (higher_order) return nullptr;
        if (e.is_atom) {
            VarId k;
            if (is_hole(e.atom, k)) return Term::var(k);
            if (e.atom == "lam") {
                higher_order = true;
                return nullptr;
            }
            return make_app(e.atom, {});
        }
        const Sexp& head = e.items[0];
        if (!head.is_atom) {
            higher_order = true;  // curried application of a compound head
            return nullptr;
        }
        VarId k;
        if (is_hole(head.atom, k)) {
            higher_order = true;  // hole in head position
            return nullptr;
        }
        if (head.atom == "lam") {
            higher_order = true;  // embedded binder
            return nullptr;
        }
        std::vector<TermPtr> args;
        for (std::size_t i = 1; i < e.items.size(); ++i) {
            TermPtr a = convert(e.items[i]);
            if (!a) return nullptr;
            args.push_back(a);
        }
        return make_app(head.atom, std::move(args));
    }

    TermPtr make_app(const std::string& name, std::vector<TermPtr> args) {
        unsigned arity = static_cast<unsigned>(args.size());
        for (Symbol s : signature) {
            if (s.name() == name && s.arity() != arity) {
                higher_order = true;  // partial or over-application of a known symbol
                return nullptr;
            }
        }
        auto it = observed_arity.find(name);
        if (it != observed_arity.end() && it->second != arity) {
            higher_order = true;  // no single first-order signature fits
            return nullptr;
        }
        observed_arity.emplace(name, arity);
        return Term::app(Symbol(name, arity), std::move(args));
    }
};

}  // namespace

std::optional<Abstraction> parse_external_abstraction(const std::string& s,
                                                      std::span<const Symbol> signature) {
    Lexer lx{s};
    Sexp e = parse_sexp(lx);
    if (!lx.eof()) throw std::invalid_argument("lambda syntax error: trailing input");

    Converter conv{signature, {}, false};
    TermPtr pattern = conv.convert(e);
    if (conv.higher_order || !pattern) return std::nullopt;
    if (pattern->is_var()) return std::nullopt;  // a bare hole abbreviates nothing
    return Abstraction(pattern);
}

}  // namespace twitch
