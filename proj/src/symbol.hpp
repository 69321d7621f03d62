#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

namespace twitch {

/**
 * Interned function symbol. Identity is the (name, arity) pair; two Symbol
 * values with the same name and arity compare equal by pointer. Constants
 * are symbols of arity 0.
 */
class Symbol {
public:
    Symbol() = default;
    Symbol(std::string_view name, unsigned arity);

    std::string_view name() const;
    unsigned arity() const;
    bool valid() const { return data_ != nullptr; }

    friend bool operator==(Symbol a, Symbol b) { return a.data_ == b.data_; }
    friend bool operator!=(Symbol a, Symbol b) { return a.data_ != b.data_; }

    std::size_t hash() const { return std::hash<const void*>{}(data_); }

    // KBO precedence: descending arity, ties broken by ascending name.
    static bool prec_greater(Symbol a, Symbol b);

    // Deterministic total order used for canonical enumeration (by name, then arity).
    static bool name_less(Symbol a, Symbol b);

private:
    struct Data;
    const Data* data_ = nullptr;
};

struct SymbolHash {
    std::size_t operator()(Symbol s) const { return s.hash(); }
};

}  // namespace twitch
