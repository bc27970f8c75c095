#ifndef INVMON_WORDS_HPP
#define INVMON_WORDS_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace invmon {

// Symbols are interned process-wide; a Letter is a symbol plus a sign.
using SymbolId = std::uint32_t;

SymbolId intern_symbol(std::string_view name);
const std::string& symbol_name(SymbolId id);
bool symbol_exists(std::string_view name);

struct Letter {
    SymbolId symbol = 0;
    int sign = 1; // +1 or -1

    Letter() = default;
    Letter(SymbolId s, int sg) : symbol(s), sign(sg) {}

    Letter inverse() const { return Letter(symbol, -sign); }

    friend bool operator==(const Letter& a, const Letter& b) {
        return a.symbol == b.symbol && a.sign == b.sign;
    }
    friend bool operator!=(const Letter& a, const Letter& b) { return !(a == b); }
    friend bool operator<(const Letter& a, const Letter& b) {
        return a.symbol != b.symbol ? a.symbol < b.symbol : a.sign > b.sign;
    }
};

// A word over signed letters; the empty word denotes the identity.
struct Word {
    std::vector<Letter> letters;

    Word() = default;
    explicit Word(std::vector<Letter> ls) : letters(std::move(ls)) {}

    std::size_t size() const { return letters.size(); }
    bool empty() const { return letters.empty(); }
    const Letter& operator[](std::size_t i) const { return letters[i]; }

    Word& append(const Letter& l) {
        letters.push_back(l);
        return *this;
    }
    Word& append(const Word& w) {
        letters.insert(letters.end(), w.letters.begin(), w.letters.end());
        return *this;
    }

    friend Word operator*(const Word& a, const Word& b) {
        Word r = a;
        r.append(b);
        return r;
    }
    friend bool operator==(const Word& a, const Word& b) { return a.letters == b.letters; }
    friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }
    friend bool operator<(const Word& a, const Word& b) { return a.letters < b.letters; }
};

struct WordHash {
    std::size_t operator()(const Word& w) const;
};

// Free reduction: cancel adjacent x x^-1 pairs until none remain.
Word reduce(const Word& w);

// Formal inverse: reversal with all signs flipped.
Word invert(const Word& w);

// Splits reduce(w) as conjugator * core * conjugator^-1 with core cyclically reduced.
std::pair<Word, Word> cyclically_reduce(const Word& w);

// All |w|+1 literal prefixes, in increasing length order (empty word first).
std::vector<Word> prefixes(const Word& w);

bool is_reduced(const Word& w);
bool is_cyclically_reduced(const Word& w);

// Homomorphic substitution of placeholder letters; inverted placeholders map to
// the inverted assignments. No free reduction is applied. Throws
// std::invalid_argument on an unassigned placeholder.
Word substitute(const Word& pattern, const std::map<SymbolId, Word>& assignment);

// Parsing/printing in the atom syntax used everywhere: whitespace-separated
// identifiers, a trailing ' marking inversion, "1" for the empty word.
Word parse_word(std::string_view text);
std::string to_string(const Word& w);
std::string to_string(const Letter& l);

// An ordered alphabet; declaration order drives the shortlex letter order.
struct Alphabet {
    std::vector<SymbolId> symbols;

    bool contains(SymbolId s) const;
    // Declaration index, or -1 if absent.
    int index_of(SymbolId s) const;
    bool contains_word(const Word& w) const;

    friend bool operator==(const Alphabet& a, const Alphabet& b) {
        return a.symbols == b.symbols;
    }
};

Alphabet parse_alphabet(std::string_view names_whitespace_separated);

// Union of two alphabets with disjointness check (throws on a clash).
Alphabet disjoint_union(const Alphabet& a, const Alphabet& b);

} // namespace invmon

#endif
