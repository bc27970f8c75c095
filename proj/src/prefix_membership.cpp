#include "invmon/prefix_membership.hpp"

#include <algorithm>
#include <set>

namespace invmon {

PrefixGeneratorSet prefix_generators(const Presentation& p) {
    return PrefixGeneratorSet{relator_prefixes(p), "relator prefixes"};
}

PrefixGeneratorSet prefix_generators(const Presentation& p, const Factorisation& f) {
    (void)p;
    return PrefixGeneratorSet{factor_prefixes_full(f), "factor prefixes both signs"};
}

namespace {

struct SplitSyllable {
    int side; // 0 = distinguished side, 1 = other
    Word word;
};

std::vector<SplitSyllable> split_by(const Word& w, const std::function<int(SymbolId)>& side_of) {
    std::vector<SplitSyllable> out;
    for (const Letter& l : w.letters) {
        int s = side_of(l.symbol);
        if (out.empty() || out.back().side != s) out.push_back({s, Word{}});
        out.back().word.append(l);
    }
    return out;
}

void trace_line(std::vector<std::string>* trace, const std::string& line) {
    if (trace) trace->push_back(line);
}

} // namespace

// ---------------------------------------------------------------------------
// Uniquely marked pipeline

UmlPrefixPipeline::UmlPrefixPipeline(Presentation p, Factorisation f, MarkerAssignment m,
                                     GroupOracle g)
    : pres_(std::move(p)), dec_(uml_decompose(pres_, f, m)), g_(std::move(g)) {
    // Q = < pref(p_j) ∪ pref(q_j^-1) > inside FG(X').
    std::vector<Word> qgens;
    std::set<Word> seen;
    for (const auto& split : dec_.splits) {
        for (const Word& q : prefixes(split.before))
            if (!q.empty() && seen.insert(q).second) qgens.push_back(q);
        for (const Word& q : prefixes(invert(split.after)))
            if (!q.empty() && seen.insert(q).second) qgens.push_back(q);
    }
    q_automaton_ = benois_automaton(qgens);
}

Answer UmlPrefixPipeline::contains(const Word& w, std::vector<std::string>* trace) const {
    Word t = dec_.translate(w);
    std::set<SymbolId> bridge_set(dec_.bridges.begin(), dec_.bridges.end());
    auto side_of = [&](SymbolId s) { return bridge_set.count(s) ? 0 : 1; };
    std::vector<SplitSyllable> sylls = split_by(t, side_of);

    // Normalize: delete factor-trivial syllables, merging neighbours.
    bool changed = true;
    bool saw_inconclusive = false;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < sylls.size(); ++i) {
            Answer triv;
            if (sylls[i].side == 0) {
                triv = g_.is_identity(dec_.untranslate(sylls[i].word));
            } else {
                triv = reduce(sylls[i].word).empty() ? Answer::yes : Answer::no;
            }
            if (triv == Answer::inconclusive) {
                saw_inconclusive = true;
                continue;
            }
            if (triv == Answer::yes) {
                sylls.erase(sylls.begin() + static_cast<std::ptrdiff_t>(i));
                if (i > 0 && i < sylls.size() && sylls[i - 1].side == sylls[i].side) {
                    sylls[i - 1].word = reduce(sylls[i - 1].word * sylls[i].word);
                    sylls.erase(sylls.begin() + static_cast<std::ptrdiff_t>(i));
                }
                changed = true;
                break;
            }
        }
    }
    if (saw_inconclusive) return Answer::inconclusive;

    for (const SplitSyllable& s : sylls) {
        if (s.side == 0) {
            trace_line(trace, "pattern syllable " + to_string(s.word) + ": unconstrained");
            continue;
        }
        bool ok = submonoid_contains(q_automaton_, s.word);
        trace_line(trace, "free syllable " + to_string(s.word) + " in Q: " + (ok ? "yes" : "no"));
        if (!ok) return Answer::no;
    }
    return Answer::yes;
}

// ---------------------------------------------------------------------------
// Disjoint alphabets pipeline

DaPrefixPipeline::DaPrefixPipeline(Presentation p, Factorisation f, std::vector<int> orders,
                                   GroupOracle g)
    : pres_(std::move(p)), chain_(da_chain(pres_, f, std::move(orders))), g_(std::move(g)) {
    for (const DaChainLevel& level : chain_.levels) {
        if (level.order == 0) {
            factor_oracles_.push_back(free_oracle(level.support));
            std::vector<Word> gens;
            std::set<Word> seen;
            for (const Word& q : prefixes(level.u))
                if (!q.empty() && seen.insert(q).second) gens.push_back(q);
            for (const Word& q : prefixes(invert(level.u)))
                if (!q.empty() && seen.insert(q).second) gens.push_back(q);
            factor_prefix_automata_.push_back(benois_automaton(gens));
        } else if (level.support.symbols.size() == 1) {
            factor_oracles_.push_back(cyclic_oracle(level.support.symbols[0], level.order));
            // The single letter generates, so the prefix monoid is the whole
            // finite cyclic group; no automaton needed.
            factor_prefix_automata_.push_back(FoldedGraph{});
        } else {
            auto leaf = leaf_oracle(level.factor, 4000);
            if (!leaf)
                throw PipelineNotApplicable(
                    "finite-order factor " + to_string(level.u) +
                    " needs a prefix membership oracle; none is built in");
            throw PipelineNotApplicable(
                "finite-order factor " + to_string(level.u) +
                " on more than one letter needs a plug-in prefix oracle");
        }
    }
}

Answer DaPrefixPipeline::side_identity(std::size_t level, int side, const Word& w) const {
    if (side == 1) return factor_oracles_[level].is_identity(w);
    return g_.is_identity(chain_.untranslate(w));
}

Answer DaPrefixPipeline::decide_level(std::size_t level, const Word& w,
                                      std::vector<std::string>* trace) const {
    const std::size_t k = chain_.levels.size();
    if (level == k) {
        // Membership in M_k = H inside H * FG(X0): after normalization the
        // form must be empty or a single bridge-side syllable.
        std::set<SymbolId> bridges;
        for (const auto& [z, u] : chain_.backward) bridges.insert(z);
        auto side_of = [&](SymbolId s) { return bridges.count(s) ? 0 : 1; };
        std::vector<SplitSyllable> sylls = split_by(reduce(w), side_of);
        bool changed = true;
        bool saw_inconclusive = false;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < sylls.size(); ++i) {
                Answer triv = sylls[i].side == 0
                                  ? g_.is_identity(chain_.untranslate(sylls[i].word))
                                  : (reduce(sylls[i].word).empty() ? Answer::yes : Answer::no);
                if (triv == Answer::inconclusive) {
                    saw_inconclusive = true;
                    continue;
                }
                if (triv == Answer::yes) {
                    sylls.erase(sylls.begin() + static_cast<std::ptrdiff_t>(i));
                    if (i > 0 && i < sylls.size() && sylls[i - 1].side == sylls[i].side) {
                        sylls[i - 1].word = reduce(sylls[i - 1].word * sylls[i].word);
                        sylls.erase(sylls.begin() + static_cast<std::ptrdiff_t>(i));
                    }
                    changed = true;
                    break;
                }
            }
        }
        if (saw_inconclusive) return Answer::inconclusive;
        if (sylls.empty()) return Answer::yes;
        bool ok = sylls.size() == 1 && sylls[0].side == 0;
        trace_line(trace, "base level: " + to_string(w) + (ok ? " lies in H" : " leaves H"));
        return ok ? Answer::yes : Answer::no;
    }

    const DaChainLevel& lv = chain_.levels[level];
    std::set<SymbolId> bside(lv.support.symbols.begin(), lv.support.symbols.end());
    auto side_of = [&](SymbolId s) { return bside.count(s) ? 1 : 0; };
    std::vector<SplitSyllable> sylls = split_by(reduce(w), side_of);

    ConstructiveSubgroupOracle b_member =
        cyclic_subgroup_oracle(factor_oracles_[level], lv.u);
    // <z_j> on the G_j side, scanned through the ambient oracle.
    GroupOracle upper;
    upper.alphabet = lv.upper.alphabet;
    const DaChain* chain = &chain_;
    const GroupOracle* gp = &g_;
    upper.is_identity = [chain, gp](const Word& x) { return gp->is_identity(chain->untranslate(x)); };
    ConstructiveSubgroupOracle g_member = cyclic_subgroup_oracle(upper, Word({Letter(lv.z, 1)}));

    bool saw_inconclusive = false;
    bool changed = true;
    while (changed) {
        changed = false;
        // Trivial-syllable deletion.
        for (std::size_t i = 0; i < sylls.size(); ++i) {
            Answer triv = side_identity(level, sylls[i].side, sylls[i].word);
            if (triv == Answer::inconclusive) {
                saw_inconclusive = true;
                continue;
            }
            if (triv == Answer::yes) {
                sylls.erase(sylls.begin() + static_cast<std::ptrdiff_t>(i));
                if (i > 0 && i < sylls.size() && sylls[i - 1].side == sylls[i].side) {
                    sylls[i - 1].word = reduce(sylls[i - 1].word * sylls[i].word);
                    sylls.erase(sylls.begin() + static_cast<std::ptrdiff_t>(i));
                }
                changed = true;
                break;
            }
        }
        if (changed) continue;
        if (sylls.size() < 2) break;
        // Rewrite amalgamated-subgroup syllables across and merge.
        for (std::size_t i = 0; i < sylls.size(); ++i) {
            SubgroupMembership m = sylls[i].side == 1 ? b_member.contains(sylls[i].word)
                                                      : g_member.contains(sylls[i].word);
            if (m.member == Answer::inconclusive) {
                saw_inconclusive = true;
                continue;
            }
            if (m.member != Answer::yes) continue;
            long exponent = 0;
            for (auto [idx, sign] : m.expression) exponent += sign;
            Word moved;
            if (sylls[i].side == 1) {
                Letter zl(lv.z, exponent >= 0 ? 1 : -1);
                for (long t = 0; t < std::labs(exponent); ++t) moved.append(zl);
            } else {
                Word step = exponent >= 0 ? lv.u : invert(lv.u);
                for (long t = 0; t < std::labs(exponent); ++t) moved.append(step);
            }
            Word merged = moved;
            std::size_t lo = i, hi = i;
            if (i > 0) {
                merged = sylls[i - 1].word * merged;
                lo = i - 1;
            }
            if (i + 1 < sylls.size()) {
                merged = merged * sylls[i + 1].word;
                hi = i + 1;
            }
            SplitSyllable repl{1 - sylls[i].side, reduce(merged)};
            sylls.erase(sylls.begin() + static_cast<std::ptrdiff_t>(lo),
                        sylls.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
            sylls.insert(sylls.begin() + static_cast<std::ptrdiff_t>(lo), repl);
            changed = true;
            break;
        }
    }
    if (saw_inconclusive) return Answer::inconclusive;

    for (const SplitSyllable& s : sylls) {
        if (s.side == 1) {
            bool ok;
            if (lv.order == 0) {
                ok = submonoid_contains(factor_prefix_automata_[level], s.word);
            } else {
                // Single-letter finite factor: its prefix monoid is the whole
                // group.
                ok = true;
            }
            trace_line(trace, "level " + std::to_string(level + 1) + " factor syllable " +
                                  to_string(s.word) + ": " + (ok ? "yes" : "no"));
            if (!ok) return Answer::no;
        } else {
            Answer sub = decide_level(level + 1, s.word, trace);
            if (sub != Answer::yes) return sub;
        }
    }
    return Answer::yes;
}

Answer DaPrefixPipeline::contains(const Word& w, std::vector<std::string>* trace) const {
    return decide_level(0, w, trace);
}

// ---------------------------------------------------------------------------
// Dispatch

namespace {

bool relators_freely_trivial(const Presentation& p) {
    for (const Word& r : p.relators)
        if (!reduce(r).empty()) return false;
    return true;
}

// Certify that every factor is a unit, by closure or by the file's assertion.
std::string certify_unital(const PresentationFile& file, const Presentation& p,
                           const Factorisation& f) {
    AdjanClosure closure = adjan_unit_closure(p, 20000, f.factors);
    bool all = true;
    for (const Word& u : f.factors)
        if (!closure.certifies(u)) all = false;
    if (all) return "unital via closure";
    if (file.unital_asserted) return "unital asserted by file";
    throw PipelineNotApplicable(
        "factorisation is not certified unital (closure failed and the file does not assert it)");
}

} // namespace

PrefixMembershipOracle build_prefix_membership(const PresentationFile& file, const GroupOracle& g,
                                               PresentationFile* rewritten) {
    PrefixMembershipOracle out;
    out.generators = prefix_generators(file.pres);

    Presentation p = file.pres;
    Factorisation f = file.factorisation();
    std::string cert;

    if (!file.hidden.empty()) {
        cert = certify_unital(file, p, f) + "; hidden-marker rewrite";
        HiddenUmlResult hr = hidden_uml_rewrite(p, f, file.hidden);
        if (rewritten) {
            rewritten->pres = hr.pres;
            rewritten->fact = hr.fact;
            rewritten->oracle = file.oracle;
        }
        auto pipeline = std::make_shared<UmlPrefixPipeline>(hr.pres, hr.fact, hr.markers, g);
        out.pipeline = "uniquely-marked";
        out.certification = cert;
        out.contains_traced = [pipeline](const Word& w, std::vector<std::string>* trace) {
            return pipeline->contains(w, trace);
        };
        return out;
    }

    if (relators_freely_trivial(p)) {
        auto automaton =
            std::make_shared<FoldedGraph>(benois_automaton(relator_prefixes(p)));
        out.pipeline = "free-benois";
        out.certification = "relators freely trivial; the group is free on its generators";
        out.contains_traced = [automaton](const Word& w, std::vector<std::string>* trace) {
            bool ok = submonoid_contains(*automaton, w);
            if (trace) trace->push_back(std::string("benois: ") + (ok ? "yes" : "no"));
            return ok ? Answer::yes : Answer::no;
        };
        return out;
    }

    if (auto markers = detect_uniquely_marked(f)) {
        cert = certify_unital(file, p, f);
        auto pipeline = std::make_shared<UmlPrefixPipeline>(p, f, *markers, g);
        out.pipeline = "uniquely-marked";
        out.certification = cert;
        out.contains_traced = [pipeline](const Word& w, std::vector<std::string>* trace) {
            return pipeline->contains(w, trace);
        };
        return out;
    }

    if (detect_alphabetically_disjoint(f)) {
        cert = certify_unital(file, p, f);
        std::vector<int> orders;
        if (!file.factor_orders.empty()) {
            orders.assign(f.factors.size(), 0);
            for (auto [idx, m] : file.factor_orders) orders[static_cast<std::size_t>(idx)] = m;
        }
        auto pipeline = std::make_shared<DaPrefixPipeline>(p, f, orders, g);
        out.pipeline = "disjoint-alphabets";
        out.certification = cert;
        out.contains_traced = [pipeline](const Word& w, std::vector<std::string>* trace) {
            return pipeline->contains(w, trace);
        };
        return out;
    }

    throw PipelineNotApplicable(
        "no pipeline applies: the factorisation is neither uniquely marked nor alphabetically "
        "disjoint, and the group is not free on its generators");
}

} // namespace invmon
