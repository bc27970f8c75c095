#include "invmon/words.hpp"

#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace invmon {

namespace {

struct SymbolTable {
    std::vector<std::string> names;
    std::unordered_map<std::string, SymbolId> ids;
    std::mutex mutex;
};

SymbolTable& table() {
    static SymbolTable t;
    return t;
}

} // namespace

SymbolId intern_symbol(std::string_view name) {
    auto& t = table();
    std::scoped_lock lock(t.mutex);
    std::string key(name);
    auto it = t.ids.find(key);
    if (it != t.ids.end()) return it->second;
    SymbolId id = static_cast<SymbolId>(t.names.size());
    t.names.push_back(key);
    t.ids.emplace(std::move(key), id);
    return id;
}

const std::string& symbol_name(SymbolId id) {
    auto& t = table();
    std::scoped_lock lock(t.mutex);
    return t.names.at(id);
}

bool symbol_exists(std::string_view name) {
    auto& t = table();
    std::scoped_lock lock(t.mutex);
    return t.ids.find(std::string(name)) != t.ids.end();
}

std::size_t WordHash::operator()(const Word& w) const {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (const Letter& l : w.letters) {
        std::size_t v = (static_cast<std::size_t>(l.symbol) << 1) | (l.sign < 0 ? 1u : 0u);
        h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

Word reduce(const Word& w) {
    Word out;
    out.letters.reserve(w.size());
    for (const Letter& l : w.letters) {
        if (!out.empty() && out.letters.back() == l.inverse())
            out.letters.pop_back();
        else
            out.letters.push_back(l);
    }
    return out;
}

Word invert(const Word& w) {
    Word out;
    out.letters.reserve(w.size());
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
        out.letters.push_back(it->inverse());
    return out;
}

std::pair<Word, Word> cyclically_reduce(const Word& w) {
    Word core = reduce(w);
    Word conj;
    while (core.size() >= 2 && core.letters.front() == core.letters.back().inverse()) {
        conj.letters.push_back(core.letters.front());
        core.letters.erase(core.letters.begin());
        core.letters.pop_back();
    }
    return {conj, core};
}

std::vector<Word> prefixes(const Word& w) {
    std::vector<Word> out;
    out.reserve(w.size() + 1);
    Word p;
    out.push_back(p);
    for (const Letter& l : w.letters) {
        p.letters.push_back(l);
        out.push_back(p);
    }
    return out;
}

bool is_reduced(const Word& w) {
    for (std::size_t i = 1; i < w.size(); ++i)
        if (w[i] == w[i - 1].inverse()) return false;
    return true;
}

bool is_cyclically_reduced(const Word& w) {
    if (!is_reduced(w)) return false;
    if (w.size() >= 2 && w.letters.front() == w.letters.back().inverse()) return false;
    return true;
}

Word substitute(const Word& pattern, const std::map<SymbolId, Word>& assignment) {
    Word out;
    for (const Letter& l : pattern.letters) {
        auto it = assignment.find(l.symbol);
        if (it == assignment.end())
            throw std::invalid_argument("substitute: unassigned placeholder " + symbol_name(l.symbol));
        if (l.sign > 0)
            out.append(it->second);
        else
            out.append(invert(it->second));
    }
    return out;
}

Word parse_word(std::string_view text) {
    Word out;
    std::istringstream in{std::string(text)};
    std::string atom;
    while (in >> atom) {
        if (atom == "1") continue;
        bool inv = false;
        if (atom.size() > 1 && atom.back() == '\'') {
            inv = true;
            atom.pop_back();
        }
        out.letters.emplace_back(intern_symbol(atom), inv ? -1 : 1);
    }
    return out;
}

std::string to_string(const Letter& l) {
    std::string s = symbol_name(l.symbol);
    if (l.sign < 0) s += '\'';
    return s;
}

std::string to_string(const Word& w) {
    if (w.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ' ';
        s += to_string(w[i]);
    }
    return s;
}

bool Alphabet::contains(SymbolId s) const {
    for (SymbolId x : symbols)
        if (x == s) return true;
    return false;
}

int Alphabet::index_of(SymbolId s) const {
    for (std::size_t i = 0; i < symbols.size(); ++i)
        if (symbols[i] == s) return static_cast<int>(i);
    return -1;
}

bool Alphabet::contains_word(const Word& w) const {
    for (const Letter& l : w.letters)
        if (!contains(l.symbol)) return false;
    return true;
}

Alphabet parse_alphabet(std::string_view names) {
    Alphabet a;
    std::istringstream in{std::string(names)};
    std::string name;
    while (in >> name) a.symbols.push_back(intern_symbol(name));
    return a;
}

Alphabet disjoint_union(const Alphabet& a, const Alphabet& b) {
    Alphabet u = a;
    for (SymbolId s : b.symbols) {
        if (a.contains(s))
            throw std::invalid_argument("alphabets are not disjoint at " + symbol_name(s));
        u.symbols.push_back(s);
    }
    return u;
}

} // namespace invmon
