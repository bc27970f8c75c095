#include "invmon/structure.hpp"

#include <algorithm>
#include <set>

#include "invmon/free_group.hpp"

namespace invmon {

SymbolId fresh_symbol(const std::string& base, const std::vector<Alphabet>& avoid) {
    std::string name = base;
    auto taken = [&](const std::string& n) {
        if (!symbol_exists(n)) return false;
        SymbolId id = intern_symbol(n);
        for (const Alphabet& a : avoid)
            if (a.contains(id)) return true;
        return false;
    };
    while (taken(name)) name.insert(name.begin(), '_');
    return intern_symbol(name);
}

std::string bridge_name(const Word& factor) {
    std::string name = "z";
    for (const Letter& l : factor.letters) {
        name += '_';
        name += symbol_name(l.symbol);
        if (l.sign < 0) name += 'I';
    }
    return name;
}

namespace {

Presentation pattern_presentation(const Factorisation& f, const std::vector<SymbolId>& bridges) {
    Presentation h;
    h.kind = PresentationKind::group;
    for (SymbolId z : bridges) h.alphabet.symbols.push_back(z);
    for (const auto& occs : f.occurrences) {
        Word r;
        for (const FactorOccurrence& o : occs)
            r.append(Letter(bridges[static_cast<std::size_t>(o.factor)], o.sign));
        h.relators.push_back(r);
    }
    return h;
}

std::vector<SymbolId> make_bridges(const Presentation& p, const Factorisation& f) {
    std::vector<SymbolId> bridges;
    std::vector<Alphabet> avoid{p.alphabet};
    Alphabet taken;
    for (const Word& u : f.factors) {
        SymbolId z = fresh_symbol(bridge_name(u), {p.alphabet, taken});
        taken.symbols.push_back(z);
        bridges.push_back(z);
    }
    return bridges;
}

} // namespace

Word UmlDecomposition::translate(const Word& w) const { return reduce(substitute(w, forward)); }

Word UmlDecomposition::untranslate(const Word& w) const {
    std::map<SymbolId, Word> m = backward;
    for (SymbolId s : free_part.symbols) m[s] = Word({Letter(s, 1)});
    return reduce(substitute(w, m));
}

UmlDecomposition uml_decompose(const Presentation& p, const Factorisation& f,
                               const MarkerAssignment& m) {
    FactorisationCheck chk = validate_factorisation(p, f);
    if (!chk.ok) throw std::invalid_argument("uml_decompose: " + chk.error);

    UmlDecomposition dec;
    dec.bridges = make_bridges(p, f);
    dec.h = pattern_presentation(f, dec.bridges);

    std::set<SymbolId> markers;
    for (std::size_t j = 0; j < f.factors.size(); ++j) {
        auto it = m.marker.find(static_cast<int>(j));
        if (it == m.marker.end())
            throw std::invalid_argument("uml_decompose: factor without a marker");
        SymbolId ms = it->second;
        const Word& u = f.factors[j];
        int count = 0;
        std::size_t pos = 0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            if (u[i].symbol == ms) {
                ++count;
                pos = i;
            }
        }
        if (count != 1)
            throw std::invalid_argument("uml_decompose: marker " + symbol_name(ms) +
                                        " does not occur exactly once in " + to_string(u));
        UmlDecomposition::Split split;
        split.marker = u[pos];
        for (std::size_t i = 0; i < pos; ++i) split.before.append(u[i]);
        for (std::size_t i = pos + 1; i < u.size(); ++i) split.after.append(u[i]);
        if (!markers.insert(ms).second)
            throw std::invalid_argument("uml_decompose: duplicate marker " + symbol_name(ms));
        dec.splits.push_back(split);
        dec.backward[dec.bridges[j]] = u;
    }

    for (SymbolId s : p.alphabet.symbols)
        if (!markers.count(s)) dec.free_part.symbols.push_back(s);

    // forward: marker y_j with u_j = p y q maps to p^-1 z q^-1 (or its flip
    // when the marked occurrence is inverted); everything else is fixed.
    for (SymbolId s : dec.free_part.symbols) dec.forward[s] = Word({Letter(s, 1)});
    for (std::size_t j = 0; j < f.factors.size(); ++j) {
        const auto& split = dec.splits[j];
        Word z({Letter(dec.bridges[j], 1)});
        Word image = invert(split.before) * z * invert(split.after);
        if (split.marker.sign < 0) image = invert(image);
        dec.forward[split.marker.symbol] = image;
    }
    return dec;
}

Word DaChain::untranslate(const Word& w) const {
    std::map<SymbolId, Word> m = backward;
    for (SymbolId s : base.alphabet.symbols) m[s] = Word({Letter(s, 1)});
    return reduce(substitute(w, m));
}

DaChain da_chain(const Presentation& p, const Factorisation& f, std::vector<int> orders) {
    FactorisationCheck chk = validate_factorisation(p, f);
    if (!chk.ok) throw std::invalid_argument("da_chain: " + chk.error);
    if (!detect_alphabetically_disjoint(f))
        throw std::invalid_argument("da_chain: factorisation is not alphabetically disjoint");

    const std::size_t k = f.factors.size();
    if (orders.empty()) {
        for (const Word& u : f.factors) {
            if (u.empty() || !is_reduced(u))
                throw std::invalid_argument(
                    "da_chain: cannot auto-derive the order of factor " + to_string(u) +
                    "; supply a factor_order tag");
            orders.push_back(0);
        }
    }
    if (orders.size() != k) throw std::invalid_argument("da_chain: one order tag per factor");

    DaChain chain;
    chain.base = p;
    std::vector<SymbolId> bridges = make_bridges(p, f);
    chain.h = pattern_presentation(f, bridges);

    std::vector<Alphabet> supports;
    std::set<SymbolId> in_factors;
    for (const Word& u : f.factors) {
        Alphabet s;
        for (const Letter& l : u.letters)
            if (!s.contains(l.symbol)) s.symbols.push_back(l.symbol);
        for (SymbolId sym : s.symbols) in_factors.insert(sym);
        supports.push_back(std::move(s));
    }
    for (SymbolId s : p.alphabet.symbols)
        if (!in_factors.count(s)) chain.x0.symbols.push_back(s);

    for (std::size_t j = 1; j <= k; ++j) {
        DaChainLevel level;
        level.support = supports[j - 1];
        level.u = f.factors[j - 1];
        level.z = bridges[j - 1];
        level.order = orders[j - 1];

        level.factor.kind = PresentationKind::group;
        level.factor.alphabet = level.support;
        if (level.order > 0) {
            Word power;
            for (int i = 0; i < level.order; ++i) power.append(level.u);
            level.factor.relators.push_back(power);
        }

        // G_j: factors 1..j replaced by bridges, the rest spelled out.
        level.upper.kind = PresentationKind::group;
        level.upper.alphabet = chain.x0;
        for (std::size_t i = 0; i < j; ++i) level.upper.alphabet.symbols.push_back(bridges[i]);
        for (std::size_t i = j; i < k; ++i)
            for (SymbolId s : supports[i].symbols) level.upper.alphabet.symbols.push_back(s);
        for (const auto& occs : f.occurrences) {
            Word r;
            for (const FactorOccurrence& o : occs) {
                std::size_t fi = static_cast<std::size_t>(o.factor);
                Word piece = fi < j ? Word({Letter(bridges[fi], 1)}) : f.factors[fi];
                r.append(o.sign > 0 ? piece : invert(piece));
            }
            level.upper.relators.push_back(r);
        }
        chain.levels.push_back(std::move(level));
        chain.backward[bridges[j - 1]] = f.factors[j - 1];
    }
    return chain;
}

ChangeUnitsResult change_units(const Presentation& p, const Factorisation& f,
                               const std::vector<Word>& new_factors) {
    FactorisationCheck chk = validate_factorisation(p, f);
    if (!chk.ok) throw std::invalid_argument("change_units: " + chk.error);
    for (const Word& u : f.factors)
        if (!is_reduced(u))
            throw std::invalid_argument("change_units: factor " + to_string(u) +
                                        " is not reduced");

    FoldedGraph old_graph = stallings_graph(f.factors);
    FoldedGraph new_graph = stallings_graph(new_factors);
    for (const Word& v : new_factors)
        if (!subgroup_contains(old_graph, v))
            throw std::invalid_argument("change_units: " + to_string(v) +
                                        " is not in the old factor subgroup");
    for (const Word& u : f.factors)
        if (!subgroup_contains(new_graph, u))
            throw std::invalid_argument("change_units: " + to_string(u) +
                                        " is not in the new factor subgroup");

    // Express each old factor over the new ones; a factor that is literally a
    // new factor keeps its one-letter expression.
    std::vector<std::vector<std::pair<int, int>>> expressions;
    for (const Word& u : f.factors) {
        int direct = -1;
        for (std::size_t i = 0; i < new_factors.size(); ++i)
            if (new_factors[i] == u) direct = static_cast<int>(i);
        if (direct >= 0) {
            expressions.push_back({{direct, 1}});
            continue;
        }
        auto witness = subgroup_witness(new_graph, u);
        if (!witness)
            throw std::invalid_argument("change_units: no expression found for " + to_string(u));
        expressions.push_back(witness->expression);
    }

    ChangeUnitsResult out;
    out.pres.kind = p.kind;
    out.pres.alphabet = p.alphabet;

    // Splice the expressions into the occurrence lists.
    std::vector<std::vector<FactorOccurrence>> new_occurrences;
    for (const auto& occs : f.occurrences) {
        std::vector<FactorOccurrence> expanded;
        for (const FactorOccurrence& o : occs) {
            const auto& expr = expressions[static_cast<std::size_t>(o.factor)];
            if (o.sign > 0) {
                for (auto [idx, sign] : expr) expanded.push_back(FactorOccurrence{idx, sign});
            } else {
                for (auto it = expr.rbegin(); it != expr.rend(); ++it)
                    expanded.push_back(FactorOccurrence{it->first, -it->second});
            }
        }
        new_occurrences.push_back(std::move(expanded));
    }

    // Drop unused new factors, remapping indices.
    std::vector<bool> used(new_factors.size(), false);
    for (const auto& occs : new_occurrences)
        for (const FactorOccurrence& o : occs) used[static_cast<std::size_t>(o.factor)] = true;
    std::vector<int> remap(new_factors.size(), -1);
    for (std::size_t i = 0; i < new_factors.size(); ++i) {
        if (used[i]) {
            remap[i] = static_cast<int>(out.fact.factors.size());
            out.fact.factors.push_back(new_factors[i]);
        }
    }
    for (auto& occs : new_occurrences) {
        for (FactorOccurrence& o : occs) o.factor = remap[static_cast<std::size_t>(o.factor)];
        out.fact.occurrences.push_back(occs);
    }
    for (std::size_t i = 0; i < p.relators.size(); ++i) {
        Word r = out.fact.expand(i);
        if (reduce(r) != reduce(p.relators[i]))
            throw std::logic_error("change_units: rewritten relator does not reduce to the original");
        out.pres.relators.push_back(r);
    }
    return out;
}

HiddenUmlResult hidden_uml_rewrite(const Presentation& p, const Factorisation& f,
                                   const std::vector<HiddenBlock>& blocks) {
    if (blocks.empty()) throw HiddenUmlError(1, "no blocks supplied");
    FactorisationCheck chk = validate_factorisation(p, f);
    if (!chk.ok) throw std::invalid_argument("hidden_uml_rewrite: " + chk.error);

    // Condition 1: the X_j = {x_j, z_j} ∪ Y_j are pairwise disjoint.
    std::vector<std::set<SymbolId>> xsets;
    for (const HiddenBlock& b : blocks) {
        std::set<SymbolId> xs;
        xs.insert(b.x);
        xs.insert(b.z);
        for (SymbolId y : b.ys) xs.insert(y);
        if (xs.size() != 2 + b.ys.size())
            throw HiddenUmlError(1, "x, z and Y overlap inside a block");
        xsets.push_back(std::move(xs));
    }
    for (std::size_t i = 0; i < xsets.size(); ++i)
        for (std::size_t j = i + 1; j < xsets.size(); ++j)
            for (SymbolId s : xsets[i])
                if (xsets[j].count(s))
                    throw HiddenUmlError(1, "blocks share the letter " + symbol_name(s));

    // Condition 2: the factor set equals the x·w·z set.
    std::set<Word> factor_set(f.factors.begin(), f.factors.end());
    std::set<Word> built_set;
    for (const HiddenBlock& b : blocks) {
        for (const Word& w : b.w_set) {
            for (const Letter& l : w.letters)
                if (!std::count(b.ys.begin(), b.ys.end(), l.symbol) || l.sign < 0)
                    throw HiddenUmlError(2, "W word " + to_string(w) +
                                                " leaves the block's Y alphabet");
            Word xwz;
            xwz.append(Letter(b.x, 1));
            xwz.append(w);
            xwz.append(Letter(b.z, 1));
            built_set.insert(xwz);
        }
    }
    if (factor_set != built_set) throw HiddenUmlError(2, "factor set differs from the x·w·z set");

    // Condition 3: the empty word lies in every W_j.
    for (const HiddenBlock& b : blocks)
        if (!std::count(b.w_set.begin(), b.w_set.end(), Word{}))
            throw HiddenUmlError(3, "a block's W set misses the empty word");

    // Condition 4: every y has a witness over W reducing to it.
    for (const HiddenBlock& b : blocks) {
        for (SymbolId y : b.ys) {
            bool found = false;
            for (const auto& [wy, occs] : b.witnesses) {
                if (wy != y) continue;
                Word prod;
                for (const FactorOccurrence& o : occs) {
                    const Word& piece = b.w_set.at(static_cast<std::size_t>(o.factor));
                    prod.append(o.sign > 0 ? piece : invert(piece));
                }
                if (reduce(prod) == Word({Letter(y, 1)})) found = true;
            }
            if (!found)
                throw HiddenUmlError(4, "no witness reduces to " + symbol_name(y));
        }
    }

    // V = { x y x^-1 : y in Y_j } ∪ { x z }, per block.
    std::vector<Word> v;
    for (const HiddenBlock& b : blocks) {
        for (SymbolId y : b.ys) {
            Word w;
            w.append(Letter(b.x, 1));
            w.append(Letter(y, 1));
            w.append(Letter(b.x, -1));
            v.push_back(w);
        }
        Word xz;
        xz.append(Letter(b.x, 1));
        xz.append(Letter(b.z, 1));
        v.push_back(xz);
    }

    HiddenUmlResult out;
    ChangeUnitsResult cu = change_units(p, f, v);
    out.pres = std::move(cu.pres);
    out.fact = std::move(cu.fact);
    out.new_factors = v;

    for (std::size_t j = 0; j < out.fact.factors.size(); ++j) {
        const Word& w = out.fact.factors[j];
        // x y x^-1 is marked by y, x z by z.
        SymbolId marker = w.size() == 3 ? w[1].symbol : w.letters.back().symbol;
        out.markers.marker[static_cast<int>(j)] = marker;
    }
    auto verify = detect_uniquely_marked(out.fact);
    if (!verify) throw std::logic_error("hidden_uml_rewrite: result is not uniquely marked");
    out.markers = *verify;
    return out;
}

Presentation units_group_presentation(const Presentation& p, const Factorisation& f) {
    FactorisationCheck chk = validate_factorisation(p, f);
    if (!chk.ok) throw std::invalid_argument("units_group_presentation: " + chk.error);
    if (!detect_uniquely_marked(f) && !detect_alphabetically_disjoint(f))
        throw std::invalid_argument(
            "units_group_presentation: factorisation is neither uniquely marked nor "
            "alphabetically disjoint");
    return pattern_presentation(f, make_bridges(p, f));
}

} // namespace invmon
