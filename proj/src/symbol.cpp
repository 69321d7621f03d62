#include "symbol.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace twitch {

struct Symbol::Data {
    std::string name;
    unsigned arity;
};

namespace {

// Global intern table. Symbols live for the process lifetime so Term nodes
// can hold plain pointers.
std::mutex& table_mutex() {
    static std::mutex m;
    return m;
}

std::map<std::pair<std::string, unsigned>, Symbol::Data*>& table() {
    static std::map<std::pair<std::string, unsigned>, Symbol::Data*> t;
    return t;
}

}  // namespace

Symbol::Symbol(std::string_view name, unsigned arity) {
    if (name.empty()) throw std::invalid_argument("symbol name must be non-empty");
    std::lock_guard<std::mutex> lock(table_mutex());
    auto key = std::make_pair(std::string(name), arity);
    auto it = table().find(key);
    if (it == table().end()) {
        auto* d = new Data{key.first, arity};
        it = table().emplace(key, d).first;
    }
    data_ = it->second;
}

std::string_view Symbol::name() const { return data_->name; }

unsigned Symbol::arity() const { return data_->arity; }

bool Symbol::prec_greater(Symbol a, Symbol b) {
    if (a.arity() != b.arity()) return a.arity() > b.arity();
    return a.name() < b.name();
}

bool Symbol::name_less(Symbol a, Symbol b) {
    if (a.name() != b.name()) return a.name() < b.name();
    return a.arity() < b.arity();
}

}  // namespace twitch
