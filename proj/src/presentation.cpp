#include "invmon/presentation.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace invmon {

void Presentation::validate() const {
    for (const Word& r : relators)
        for (const Letter& l : r.letters)
            if (!alphabet.contains(l.symbol))
                throw std::invalid_argument("relator letter " + symbol_name(l.symbol) +
                                            " is not a declared generator");
}

Word Factorisation::expand(std::size_t relator_index) const {
    Word w;
    for (const FactorOccurrence& occ : occurrences.at(relator_index)) {
        const Word& f = factors.at(static_cast<std::size_t>(occ.factor));
        if (occ.sign > 0)
            w.append(f);
        else
            w.append(invert(f));
    }
    return w;
}

Factorisation trivial_factorisation(const Presentation& p) {
    Factorisation f;
    for (const Word& r : p.relators) {
        int idx = -1;
        for (std::size_t j = 0; j < f.factors.size(); ++j)
            if (f.factors[j] == r) idx = static_cast<int>(j);
        if (idx < 0) {
            idx = static_cast<int>(f.factors.size());
            f.factors.push_back(r);
        }
        f.occurrences.push_back({FactorOccurrence{idx, 1}});
    }
    return f;
}

Factorisation PresentationFile::factorisation() const {
    if (fact) return *fact;
    return trivial_factorisation(pres);
}

namespace {

struct LineToken {
    std::string text;
    int column;
};

std::vector<LineToken> tokenize(const std::string& line) {
    std::vector<LineToken> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
    }
    return out;
}

Letter parse_atom(const LineToken& tok, int lineno) {
    std::string a = tok.text;
    bool inv = false;
    if (a.size() > 1 && a.back() == '\'') {
        inv = true;
        a.pop_back();
    }
    if (a.empty() || a == "(" || a == ")")
        throw ParseError("expected an identifier atom, got '" + tok.text + "'", lineno, tok.column);
    return Letter(intern_symbol(a), inv ? -1 : 1);
}

struct RelatorParse {
    Word word;
    bool has_parens = false;
    // (factor word, occurrence sign) in order
    std::vector<std::pair<Word, int>> groups;
};

RelatorParse parse_relator_tokens(const std::vector<LineToken>& toks, std::size_t from, int lineno) {
    RelatorParse rp;
    std::size_t i = from;
    while (i < toks.size()) {
        const LineToken& t = toks[i];
        if (t.text == "(") {
            rp.has_parens = true;
            Word factor;
            ++i;
            while (i < toks.size() && toks[i].text != ")" && toks[i].text != ")'") {
                if (toks[i].text == "(")
                    throw ParseError("nested parentheses are not allowed", lineno, toks[i].column);
                if (toks[i].text != "1") factor.append(parse_atom(toks[i], lineno));
                ++i;
            }
            if (i >= toks.size())
                throw ParseError("unclosed parenthesis", lineno, t.column);
            int sign = toks[i].text == ")'" ? -1 : 1;
            ++i;
            rp.groups.emplace_back(factor, sign);
            if (sign > 0)
                rp.word.append(factor);
            else
                rp.word.append(invert(factor));
        } else if (t.text == ")" || t.text == ")'") {
            throw ParseError("unbalanced ')'", lineno, t.column);
        } else if (t.text == "1") {
            ++i;
        } else {
            Letter l = parse_atom(t, lineno);
            rp.groups.emplace_back(Word({Letter(l.symbol, 1)}), l.sign);
            rp.word.append(l);
            ++i;
        }
    }
    return rp;
}

Word parse_word_tokens(const std::vector<LineToken>& toks, std::size_t from, std::size_t to, int lineno) {
    Word w;
    for (std::size_t i = from; i < to; ++i) {
        if (toks[i].text == "1") continue;
        w.append(parse_atom(toks[i], lineno));
    }
    return w;
}

std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

} // namespace

PresentationFile parse_presentation_file(const std::string& text) {
    PresentationFile file;
    bool kind_seen = false;
    bool generators_seen = false;
    std::vector<RelatorParse> relators;
    std::vector<std::pair<int, Word>> raw_orders; // (m, factor word)

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = strip_comment(raw);
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        const std::string& head = toks[0].text;

        if (!kind_seen) {
            if (head == "group")
                file.pres.kind = PresentationKind::group;
            else if (head == "inverse_monoid")
                file.pres.kind = PresentationKind::inverse_monoid;
            else
                throw ParseError("expected header 'group' or 'inverse_monoid'", lineno, toks[0].column);
            kind_seen = true;
            continue;
        }

        if (head == "generators:") {
            for (std::size_t i = 1; i < toks.size(); ++i) {
                Letter l = parse_atom(toks[i], lineno);
                if (l.sign < 0)
                    throw ParseError("generator names cannot carry '", lineno, toks[i].column);
                if (file.pres.alphabet.contains(l.symbol))
                    throw ParseError("duplicate generator " + symbol_name(l.symbol), lineno, toks[i].column);
                file.pres.alphabet.symbols.push_back(l.symbol);
            }
            generators_seen = true;
        } else if (head == "relator:") {
            if (!generators_seen)
                throw ParseError("relator before generators line", lineno, toks[0].column);
            relators.push_back(parse_relator_tokens(toks, 1, lineno));
        } else if (head == "oracle:") {
            if (toks.size() < 2) throw ParseError("missing oracle kind", lineno, toks[0].column);
            const std::string& k = toks[1].text;
            if (k == "free") {
                file.oracle.kind = OracleSpec::Kind::free_group;
            } else if (k == "cyclic") {
                if (toks.size() < 3) throw ParseError("cyclic oracle needs a modulus", lineno, toks[1].column);
                file.oracle.kind = OracleSpec::Kind::cyclic;
                file.oracle.modulus = std::stoi(toks[2].text);
            } else if (k == "kb") {
                file.oracle.kind = OracleSpec::Kind::knuth_bendix;
                if (toks.size() >= 3) file.oracle.budget = std::stoi(toks[2].text);
            } else if (k == "amalgam-of") {
                if (toks.size() < 4)
                    throw ParseError("amalgam-of needs two file references", lineno, toks[1].column);
                file.oracle.kind = OracleSpec::Kind::amalgam;
                file.oracle.left_ref = toks[2].text;
                file.oracle.right_ref = toks[3].text;
            } else {
                throw ParseError("unknown oracle kind '" + k + "'", lineno, toks[1].column);
            }
        } else if (head == "unital:") {
            if (toks.size() != 2 || toks[1].text != "asserted")
                throw ParseError("expected 'unital: asserted'", lineno, toks[0].column);
            file.unital_asserted = true;
        } else if (head == "amalgam_pair:") {
            std::size_t eq = 0;
            for (std::size_t i = 1; i < toks.size(); ++i)
                if (toks[i].text == "=") eq = i;
            if (eq == 0) throw ParseError("amalgam_pair needs '='", lineno, toks[0].column);
            Word u = parse_word_tokens(toks, 1, eq, lineno);
            Word v = parse_word_tokens(toks, eq + 1, toks.size(), lineno);
            file.amalgam_pairs.emplace_back(u, v);
        } else if (head == "hidden_block:") {
            std::size_t bar = 0;
            for (std::size_t i = 1; i < toks.size(); ++i)
                if (toks[i].text == "|") bar = i;
            if (bar != 3)
                throw ParseError("expected 'hidden_block: x z | y...'", lineno, toks[0].column);
            HiddenBlock b;
            b.x = parse_atom(toks[1], lineno).symbol;
            b.z = parse_atom(toks[2], lineno).symbol;
            for (std::size_t i = bar + 1; i < toks.size(); ++i)
                b.ys.push_back(parse_atom(toks[i], lineno).symbol);
            file.hidden.push_back(std::move(b));
        } else if (head == "hidden_w:") {
            if (toks.size() < 2) throw ParseError("hidden_w needs a block index", lineno, toks[0].column);
            std::size_t block = static_cast<std::size_t>(std::stoi(toks[1].text));
            if (block == 0 || block > file.hidden.size())
                throw ParseError("hidden_w block index out of range", lineno, toks[1].column);
            file.hidden[block - 1].w_set.push_back(parse_word_tokens(toks, 2, toks.size(), lineno));
        } else if (head == "hidden_witness:") {
            if (toks.size() < 4) throw ParseError("malformed hidden_witness", lineno, toks[0].column);
            std::size_t block = static_cast<std::size_t>(std::stoi(toks[1].text));
            if (block == 0 || block > file.hidden.size())
                throw ParseError("hidden_witness block index out of range", lineno, toks[1].column);
            HiddenBlock& b = file.hidden[block - 1];
            SymbolId y = parse_atom(toks[2], lineno).symbol;
            if (toks[3].text != "=")
                throw ParseError("hidden_witness needs '='", lineno, toks[3].column);
            RelatorParse rp = parse_relator_tokens(toks, 4, lineno);
            std::vector<FactorOccurrence> occs;
            for (const auto& [word, sign] : rp.groups) {
                int idx = -1;
                for (std::size_t j = 0; j < b.w_set.size(); ++j)
                    if (b.w_set[j] == word) idx = static_cast<int>(j);
                if (idx < 0)
                    throw ParseError("hidden_witness factor is not a listed W word: " + to_string(word),
                                     lineno, toks[4].column);
                occs.push_back(FactorOccurrence{idx, sign});
            }
            b.witnesses.emplace_back(y, std::move(occs));
        } else if (head == "factor_order:") {
            if (toks.size() < 3) throw ParseError("malformed factor_order", lineno, toks[0].column);
            int m = std::stoi(toks[1].text);
            raw_orders.emplace_back(m, parse_word_tokens(toks, 2, toks.size(), lineno));
        } else {
            throw ParseError("unknown directive '" + head + "'", lineno, toks[0].column);
        }
    }

    if (!kind_seen) throw ParseError("empty presentation file", lineno ? lineno : 1, 1);
    if (!generators_seen) throw ParseError("missing generators line", lineno, 1);

    bool any_parens = false;
    for (const RelatorParse& rp : relators) any_parens |= rp.has_parens;
    for (const RelatorParse& rp : relators) file.pres.relators.push_back(rp.word);
    file.pres.validate();

    if (any_parens) {
        Factorisation f;
        for (const RelatorParse& rp : relators) {
            std::vector<FactorOccurrence> occs;
            for (const auto& [word, sign] : rp.groups) {
                int idx = -1;
                for (std::size_t j = 0; j < f.factors.size(); ++j)
                    if (f.factors[j] == word) idx = static_cast<int>(j);
                if (idx < 0) {
                    idx = static_cast<int>(f.factors.size());
                    f.factors.push_back(word);
                }
                occs.push_back(FactorOccurrence{idx, sign});
            }
            f.occurrences.push_back(std::move(occs));
        }
        file.fact = std::move(f);
    }

    for (const auto& [m, word] : raw_orders) {
        Factorisation f = file.factorisation();
        int idx = -1;
        for (std::size_t j = 0; j < f.factors.size(); ++j)
            if (f.factors[j] == word) idx = static_cast<int>(j);
        if (idx < 0)
            throw ParseError("factor_order names a word that is not a factor: " + to_string(word), 1, 1);
        file.factor_orders.emplace_back(idx, m);
    }

    return file;
}

PresentationFile load_presentation_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open presentation file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_presentation_file(buf.str());
}

std::string print_presentation_file(const PresentationFile& f) {
    std::ostringstream out;
    out << (f.pres.kind == PresentationKind::group ? "group" : "inverse_monoid") << '\n';
    out << "generators:";
    for (SymbolId s : f.pres.alphabet.symbols) out << ' ' << symbol_name(s);
    out << '\n';

    for (std::size_t i = 0; i < f.pres.relators.size(); ++i) {
        out << "relator:";
        if (f.fact) {
            for (const FactorOccurrence& occ : f.fact->occurrences[i]) {
                out << " (";
                const Word& w = f.fact->factors[static_cast<std::size_t>(occ.factor)];
                for (const Letter& l : w.letters) out << ' ' << to_string(l);
                out << " )" << (occ.sign < 0 ? "'" : "");
            }
        } else {
            for (const Letter& l : f.pres.relators[i].letters) out << ' ' << to_string(l);
            if (f.pres.relators[i].empty()) out << " 1";
        }
        out << '\n';
    }

    switch (f.oracle.kind) {
        case OracleSpec::Kind::unspecified:
            break;
        case OracleSpec::Kind::free_group:
            out << "oracle: free\n";
            break;
        case OracleSpec::Kind::cyclic:
            out << "oracle: cyclic " << f.oracle.modulus << '\n';
            break;
        case OracleSpec::Kind::knuth_bendix:
            out << "oracle: kb " << f.oracle.budget << '\n';
            break;
        case OracleSpec::Kind::amalgam:
            out << "oracle: amalgam-of " << f.oracle.left_ref << ' ' << f.oracle.right_ref << '\n';
            break;
    }
    if (f.unital_asserted) out << "unital: asserted\n";
    for (const auto& [idx, m] : f.factor_orders) {
        Factorisation fac = f.factorisation();
        out << "factor_order: " << m << ' ' << to_string(fac.factors[static_cast<std::size_t>(idx)])
            << '\n';
    }
    for (std::size_t b = 0; b < f.hidden.size(); ++b) {
        const HiddenBlock& blk = f.hidden[b];
        out << "hidden_block: " << symbol_name(blk.x) << ' ' << symbol_name(blk.z) << " |";
        for (SymbolId y : blk.ys) out << ' ' << symbol_name(y);
        out << '\n';
        for (const Word& w : blk.w_set) {
            out << "hidden_w: " << (b + 1);
            if (!w.empty()) out << ' ' << to_string(w);
            out << '\n';
        }
        for (const auto& [y, occs] : blk.witnesses) {
            out << "hidden_witness: " << (b + 1) << ' ' << symbol_name(y) << " =";
            for (const FactorOccurrence& occ : occs) {
                out << " (";
                for (const Letter& l : blk.w_set[static_cast<std::size_t>(occ.factor)].letters)
                    out << ' ' << to_string(l);
                out << " )" << (occ.sign < 0 ? "'" : "");
            }
            out << '\n';
        }
    }
    for (const auto& [u, v] : f.amalgam_pairs)
        out << "amalgam_pair: " << to_string(u) << " = " << to_string(v) << '\n';
    return out.str();
}

} // namespace invmon
