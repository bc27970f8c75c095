#include "invmon/factorisation.hpp"

#include <algorithm>
#include <set>

#include "invmon/stephen.hpp"

namespace invmon {

FactorisationCheck validate_factorisation(const Presentation& p, const Factorisation& f) {
    FactorisationCheck out;
    if (f.occurrences.size() != p.relators.size()) {
        out.ok = false;
        out.error = "occurrence lists do not match the relator count";
        return out;
    }
    for (std::size_t i = 0; i < p.relators.size(); ++i) {
        Word built = f.expand(i);
        if (built != p.relators[i]) {
            std::size_t pos = 0;
            while (pos < built.size() && pos < p.relators[i].size() &&
                   built[pos] == p.relators[i][pos])
                ++pos;
            out.ok = false;
            out.error = "relator " + std::to_string(i + 1) +
                        " does not match its factorisation at letter " + std::to_string(pos + 1);
            return out;
        }
    }
    std::vector<bool> used(f.factors.size(), false);
    for (const auto& occs : f.occurrences)
        for (const FactorOccurrence& o : occs) used[static_cast<std::size_t>(o.factor)] = true;
    for (std::size_t j = 0; j < used.size(); ++j) {
        if (!used[j]) {
            out.ok = false;
            out.error = "factor " + to_string(f.factors[j]) + " is never used";
            return out;
        }
    }
    return out;
}

namespace {
std::map<SymbolId, int> symbol_counts(const Word& w) {
    std::map<SymbolId, int> c;
    for (const Letter& l : w.letters) c[l.symbol]++;
    return c;
}
} // namespace

std::optional<MarkerAssignment> detect_uniquely_marked(const Factorisation& f) {
    std::vector<std::map<SymbolId, int>> counts;
    counts.reserve(f.factors.size());
    for (const Word& u : f.factors) counts.push_back(symbol_counts(u));

    MarkerAssignment out;
    for (std::size_t i = 0; i < f.factors.size(); ++i) {
        std::optional<SymbolId> marker;
        for (const Letter& l : f.factors[i].letters) {
            if (counts[i][l.symbol] != 1) continue;
            bool elsewhere = false;
            for (std::size_t j = 0; j < f.factors.size() && !elsewhere; ++j)
                if (j != i && counts[j].count(l.symbol)) elsewhere = true;
            if (!elsewhere) {
                marker = l.symbol;
                break;
            }
        }
        if (!marker) return std::nullopt;
        out.marker[static_cast<int>(i)] = *marker;
    }
    return out;
}

bool detect_alphabetically_disjoint(const Factorisation& f) {
    if (f.factors.size() < 2) return false;
    std::vector<std::set<SymbolId>> supports;
    for (const Word& u : f.factors) {
        std::set<SymbolId> s;
        for (const Letter& l : u.letters) s.insert(l.symbol);
        supports.push_back(std::move(s));
    }
    for (std::size_t i = 0; i < supports.size(); ++i)
        for (std::size_t j = i + 1; j < supports.size(); ++j)
            for (SymbolId s : supports[i])
                if (supports[j].count(s)) return false;
    return true;
}

bool AdjanClosure::certifies(const Word& w) const {
    return std::find(units.begin(), units.end(), w) != units.end();
}

std::optional<UnitCertificate> AdjanClosure::certificate_for(const Word& w) const {
    if (!certifies(w)) return std::nullopt;
    // Collect the ancestor chain: all steps whose words feed the target.
    UnitCertificate cert;
    cert.word = w;
    std::set<std::size_t> needed;
    std::function<void(const Word&)> pull = [&](const Word& target) {
        for (std::size_t i = 0; i < steps.size(); ++i) {
            if (steps[i].word != target) continue;
            if (needed.count(i)) return;
            needed.insert(i);
            if (!steps[i].parent_left.empty()) pull(steps[i].parent_left);
            if (!steps[i].parent_right.empty()) pull(steps[i].parent_right);
            return;
        }
    };
    pull(w);
    for (std::size_t i = 0; i < steps.size(); ++i)
        if (needed.count(i)) cert.derivation.push_back(steps[i]);
    return cert;
}

AdjanClosure adjan_unit_closure(const Presentation& p, int budget,
                                const std::vector<Word>& stephen_hints, int stephen_rounds) {
    AdjanClosure closure;
    std::set<Word> seen;

    auto certify = [&](Word w, AdjanStep step) {
        if (w.empty() || seen.count(w)) return false;
        seen.insert(w);
        step.word = w;
        closure.steps.push_back(step);
        closure.units.push_back(std::move(w));
        return true;
    };

    long applications = 0;
    for (std::size_t i = 0; i < p.relators.size(); ++i) {
        AdjanStep s;
        s.rule = "relator";
        s.relator_index = static_cast<int>(i);
        certify(p.relators[i], s);
        AdjanStep si;
        si.rule = "inverse";
        si.relator_index = static_cast<int>(i);
        si.parent_left = p.relators[i];
        certify(invert(p.relators[i]), si);
    }

    // Overlap fixpoint: w2 a suffix of u and a prefix of v certifies w2 and
    // both complements (u = w1 w2, v = w2 w3). Stephen-verified hints join
    // afterwards, only for words the syntactic rules missed.
    bool hints_done = false;
    bool grew = true;
    while (grew && !closure.budget_exhausted) {
        grew = false;
        const std::vector<Word> snapshot = closure.units;
        for (const Word& u : snapshot) {
            for (const Word& v : snapshot) {
                std::size_t maxk = std::min(u.size(), v.size());
                for (std::size_t k = 1; k <= maxk; ++k) {
                    if (++applications > budget) {
                        closure.budget_exhausted = true;
                        return closure;
                    }
                    if (!std::equal(v.letters.begin(),
                                    v.letters.begin() + static_cast<std::ptrdiff_t>(k),
                                    u.letters.end() - static_cast<std::ptrdiff_t>(k)))
                        continue;
                    Word w2(std::vector<Letter>(v.letters.begin(),
                                                v.letters.begin() + static_cast<std::ptrdiff_t>(k)));
                    Word w1(std::vector<Letter>(u.letters.begin(),
                                                u.letters.end() - static_cast<std::ptrdiff_t>(k)));
                    Word w3(std::vector<Letter>(v.letters.begin() + static_cast<std::ptrdiff_t>(k),
                                                v.letters.end()));
                    AdjanStep s;
                    s.rule = "overlap";
                    s.parent_left = u;
                    s.parent_right = v;
                    grew |= certify(w2, s);
                    grew |= certify(w1, s);
                    grew |= certify(w3, s);
                }
            }
        }
        if (!grew && !hints_done) {
            hints_done = true;
            for (const Word& hint : stephen_hints) {
                if (hint.empty() || seen.count(hint)) continue;
                if (stephen_equal(p, hint * invert(hint), Word{}, stephen_rounds) ==
                        SemiDecision::equal &&
                    stephen_equal(p, invert(hint) * hint, Word{}, stephen_rounds) ==
                        SemiDecision::equal) {
                    AdjanStep s;
                    s.rule = "stephen";
                    s.stephen_rounds = stephen_rounds;
                    grew |= certify(hint, s);
                }
            }
        }
    }
    return closure;
}

bool replay_adjan(const Presentation& p, const AdjanClosure& closure, int stephen_rounds) {
    std::set<Word> known;
    for (const AdjanStep& s : closure.steps) {
        if (s.rule == "relator") {
            if (s.relator_index < 0 ||
                static_cast<std::size_t>(s.relator_index) >= p.relators.size() ||
                p.relators[static_cast<std::size_t>(s.relator_index)] != s.word)
                return false;
        } else if (s.rule == "inverse") {
            if (s.relator_index < 0 ||
                static_cast<std::size_t>(s.relator_index) >= p.relators.size() ||
                invert(p.relators[static_cast<std::size_t>(s.relator_index)]) != s.word)
                return false;
        } else if (s.rule == "overlap") {
            if (!known.count(s.parent_left) || !known.count(s.parent_right)) return false;
            const Word& u = s.parent_left;
            const Word& v = s.parent_right;
            bool justified = false;
            for (std::size_t k = 1; k <= std::min(u.size(), v.size()) && !justified; ++k) {
                if (!std::equal(v.letters.begin(),
                                v.letters.begin() + static_cast<std::ptrdiff_t>(k),
                                u.letters.end() - static_cast<std::ptrdiff_t>(k)))
                    continue;
                Word w2(std::vector<Letter>(v.letters.begin(),
                                            v.letters.begin() + static_cast<std::ptrdiff_t>(k)));
                Word w1(std::vector<Letter>(u.letters.begin(),
                                            u.letters.end() - static_cast<std::ptrdiff_t>(k)));
                Word w3(std::vector<Letter>(v.letters.begin() + static_cast<std::ptrdiff_t>(k),
                                            v.letters.end()));
                justified = (s.word == w1 || s.word == w2 || s.word == w3);
            }
            if (!justified) return false;
        } else if (s.rule == "stephen") {
            if (stephen_equal(p, s.word * invert(s.word), Word{}, stephen_rounds) !=
                    SemiDecision::equal ||
                stephen_equal(p, invert(s.word) * s.word, Word{}, stephen_rounds) !=
                    SemiDecision::equal)
                return false;
        } else {
            return false;
        }
        known.insert(s.word);
    }
    return true;
}

std::vector<Word> relator_prefixes(const Presentation& p) {
    std::vector<Word> out;
    std::set<Word> seen;
    for (const Word& r : p.relators)
        for (const Word& q : prefixes(r))
            if (!q.empty() && seen.insert(q).second) out.push_back(q);
    return out;
}

std::vector<Word> factor_prefixes_full(const Factorisation& f) {
    std::vector<Word> out;
    std::set<Word> seen;
    for (const Word& u : f.factors) {
        for (const Word& q : prefixes(u))
            if (!q.empty() && seen.insert(q).second) out.push_back(q);
        for (const Word& q : prefixes(invert(u)))
            if (!q.empty() && seen.insert(q).second) out.push_back(q);
    }
    return out;
}

Answer check_conservative(const Presentation& p, const Factorisation& f,
                          const std::function<Answer(const Word&)>& in_prefix_monoid,
                          const std::function<Answer(const Word&)>& in_factor_prefix_monoid) {
    bool inconclusive = false;
    for (const Word& g : factor_prefixes_full(f)) {
        Answer a = in_prefix_monoid(g);
        if (a == Answer::no) return Answer::no;
        if (a == Answer::inconclusive) inconclusive = true;
    }
    for (const Word& g : relator_prefixes(p)) {
        Answer a = in_factor_prefix_monoid(g);
        if (a == Answer::no) return Answer::no;
        if (a == Answer::inconclusive) inconclusive = true;
    }
    return inconclusive ? Answer::inconclusive : Answer::yes;
}

} // namespace invmon
