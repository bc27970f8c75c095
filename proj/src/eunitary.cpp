#include "invmon/eunitary.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>

namespace invmon {

EUnitaryCertificate certify_single_relator(const Presentation& p) {
    if (p.relators.size() != 1)
        throw CertificationFailure(
            "single-relator route needs exactly one relator (cyclically reduced relators are "
            "insufficient with several relators)");
    const Word& r = p.relators[0];
    if (!is_reduced(r)) throw CertificationFailure("relator " + to_string(r) + " is not reduced");
    if (!is_cyclically_reduced(r))
        throw CertificationFailure("relator " + to_string(r) + " is not cyclically reduced");
    EUnitaryCertificate cert;
    cert.route = "single-cyclically-reduced";
    cert.presentation = p;
    return cert;
}

bool replay_certificate(const EUnitaryCertificate& cert) {
    if (cert.route == "single-cyclically-reduced") {
        return cert.presentation.relators.size() == 1 &&
               is_cyclically_reduced(cert.presentation.relators[0]);
    }
    if (cert.route == "amalgam-over-units") {
        if (cert.factors.size() != 2) return false;
        for (const auto& sub : cert.factors)
            if (!replay_certificate(*sub)) return false;
        if (cert.pairs.size() != cert.left_units.size() ||
            cert.pairs.size() != cert.right_units.size())
            return false;
        for (std::size_t i = 0; i < cert.pairs.size(); ++i) {
            if (cert.left_units[i].word != cert.pairs[i].first) return false;
            if (cert.right_units[i].word != cert.pairs[i].second) return false;
            AdjanClosure lc;
            lc.steps = cert.left_units[i].derivation;
            for (const AdjanStep& s : lc.steps) lc.units.push_back(s.word);
            if (!replay_adjan(cert.factors[0]->presentation, lc)) return false;
            AdjanClosure rc;
            rc.steps = cert.right_units[i].derivation;
            for (const AdjanStep& s : rc.steps) rc.units.push_back(s.word);
            if (!replay_adjan(cert.factors[1]->presentation, rc)) return false;
        }
        // The combined relator list must be factor relators plus the pair words.
        const auto& rel = cert.presentation.relators;
        std::size_t n1 = cert.factors[0]->presentation.relators.size();
        std::size_t n2 = cert.factors[1]->presentation.relators.size();
        if (rel.size() != n1 + n2 + cert.pairs.size()) return false;
        for (std::size_t i = 0; i < n1; ++i)
            if (rel[i] != cert.factors[0]->presentation.relators[i]) return false;
        for (std::size_t i = 0; i < n2; ++i)
            if (rel[n1 + i] != cert.factors[1]->presentation.relators[i]) return false;
        for (std::size_t i = 0; i < cert.pairs.size(); ++i) {
            Word expected = cert.pairs[i].first * invert(cert.pairs[i].second);
            if (rel[n1 + n2 + i] != expected) return false;
        }
        return true;
    }
    return false;
}

bool check_upward_directed(const Presentation& p, UpwardKind kind, const UpwardDirectedData& data,
                           std::string* reason) {
    auto fail = [&](const std::string& why) {
        if (reason) *reason = why;
        return false;
    };
    switch (kind) {
        case UpwardKind::units: {
            if (data.unit_certificates.size() != data.generators.size())
                return fail("one unit certificate per generator is required");
            for (std::size_t i = 0; i < data.generators.size(); ++i) {
                if (data.unit_certificates[i].word != data.generators[i])
                    return fail("certificate word mismatch for " + to_string(data.generators[i]));
                AdjanClosure c;
                c.steps = data.unit_certificates[i].derivation;
                for (const AdjanStep& s : c.steps) c.units.push_back(s.word);
                if (!replay_adjan(p, c))
                    return fail("unit certificate replay fails for " +
                                to_string(data.generators[i]));
            }
            return true;
        }
        case UpwardKind::idempotents: {
            // Idempotent already in the free inverse monoid: freely trivial.
            for (const Word& g : data.generators)
                if (!reduce(g).empty())
                    return fail(to_string(g) + " is not a free-inverse-monoid idempotent");
            return true;
        }
        case UpwardKind::right_unit_cyclic:
        case UpwardKind::left_unit_cyclic: {
            if (data.generators.size() != 1)
                return fail("the one-sided-unit cases take a single generator");
            const Word& g = data.generators[0];
            std::vector<Word> pieces;
            for (const Word& r : p.relators) {
                std::vector<Word> ps = kind == UpwardKind::right_unit_cyclic
                                           ? prefixes(r)
                                           : prefixes(invert(r));
                for (Word& q : ps) {
                    if (q.empty()) continue;
                    pieces.push_back(kind == UpwardKind::right_unit_cyclic ? q : invert(q));
                }
            }
            // Literal product decomposition over the pieces.
            std::vector<char> reach(g.size() + 1, 0);
            reach[0] = 1;
            for (std::size_t i = 0; i < g.size(); ++i) {
                if (!reach[i]) continue;
                for (const Word& piece : pieces) {
                    if (i + piece.size() > g.size()) continue;
                    if (std::equal(piece.letters.begin(), piece.letters.end(),
                                   g.letters.begin() + static_cast<std::ptrdiff_t>(i)))
                        reach[i + piece.size()] = 1;
                }
            }
            if (!reach[g.size()])
                return fail(to_string(g) + " is not a literal product of relator " +
                            (kind == UpwardKind::right_unit_cyclic ? "prefixes" : "suffixes"));
            return true;
        }
    }
    return false;
}

AmalgamCertification certify_amalgam(const PresentationFile& left,
                                     const EUnitaryCertificate& left_cert,
                                     const PresentationFile& right,
                                     const EUnitaryCertificate& right_cert,
                                     const std::vector<std::pair<Word, Word>>& pairs,
                                     const AdjanClosure& left_units,
                                     const AdjanClosure& right_units) {
    if (pairs.empty()) throw CertificationFailure("no amalgamated pairs given");
    for (SymbolId s : left.pres.alphabet.symbols)
        if (right.pres.alphabet.contains(s))
            throw CertificationFailure("alphabet clash at " + symbol_name(s));

    AmalgamCertification out;
    out.certificate.route = "amalgam-over-units";
    out.certificate.factors.push_back(std::make_shared<EUnitaryCertificate>(left_cert));
    out.certificate.factors.push_back(std::make_shared<EUnitaryCertificate>(right_cert));
    out.certificate.pairs = pairs;

    for (const auto& [u, v] : pairs) {
        if (!left.pres.alphabet.contains_word(u))
            throw CertificationFailure("pair word " + to_string(u) + " is not over the left alphabet");
        if (!right.pres.alphabet.contains_word(v))
            throw CertificationFailure("pair word " + to_string(v) +
                                       " is not over the right alphabet");
        auto lu = left_units.certificate_for(u);
        if (!lu)
            throw CertificationFailure("no unit certificate for " + to_string(u) +
                                       " in the left factor");
        auto ru = right_units.certificate_for(v);
        if (!ru)
            throw CertificationFailure("no unit certificate for " + to_string(v) +
                                       " in the right factor");
        out.certificate.left_units.push_back(*lu);
        out.certificate.right_units.push_back(*ru);
    }

    // Combined special presentation: factor relators, then u_i v_i^-1 = 1.
    PresentationFile combined;
    combined.pres.kind = PresentationKind::inverse_monoid;
    combined.pres.alphabet = disjoint_union(left.pres.alphabet, right.pres.alphabet);

    Factorisation fact;
    auto add_factor = [&fact](const Word& w) {
        for (std::size_t i = 0; i < fact.factors.size(); ++i)
            if (fact.factors[i] == w) return static_cast<int>(i);
        fact.factors.push_back(w);
        return static_cast<int>(fact.factors.size() - 1);
    };
    auto import_side = [&](const PresentationFile& side) {
        Factorisation sf = side.factorisation();
        for (std::size_t i = 0; i < side.pres.relators.size(); ++i) {
            combined.pres.relators.push_back(side.pres.relators[i]);
            std::vector<FactorOccurrence> occs;
            for (const FactorOccurrence& o : sf.occurrences[i])
                occs.push_back(FactorOccurrence{
                    add_factor(sf.factors[static_cast<std::size_t>(o.factor)]), o.sign});
            fact.occurrences.push_back(std::move(occs));
        }
    };
    import_side(left);
    import_side(right);
    for (const auto& [u, v] : pairs) {
        combined.pres.relators.push_back(u * invert(v));
        fact.occurrences.push_back(
            {FactorOccurrence{add_factor(u), 1}, FactorOccurrence{add_factor(v), -1}});
    }
    combined.fact = std::move(fact);
    combined.amalgam_pairs = pairs;
    out.certificate.presentation = combined.pres;
    out.combined = std::move(combined);

    if (!replay_certificate(out.certificate))
        throw std::logic_error("amalgam certificate failed its own replay");
    return out;
}

namespace {

nlohmann::ordered_json word_json(const Word& w) { return to_string(w); }

nlohmann::ordered_json unit_cert_json(const UnitCertificate& c) {
    nlohmann::ordered_json j;
    j["word"] = word_json(c.word);
    nlohmann::ordered_json steps = nlohmann::ordered_json::array();
    for (const AdjanStep& s : c.derivation) {
        nlohmann::ordered_json sj;
        sj["rule"] = s.rule;
        sj["word"] = word_json(s.word);
        if (s.rule == "overlap") {
            sj["suffix_of"] = word_json(s.parent_left);
            sj["prefix_of"] = word_json(s.parent_right);
        }
        if (s.relator_index >= 0) sj["relator"] = s.relator_index + 1;
        if (s.rule == "stephen") sj["rounds"] = s.stephen_rounds;
        steps.push_back(sj);
    }
    j["derivation"] = steps;
    return j;
}

nlohmann::ordered_json cert_json(const EUnitaryCertificate& cert) {
    nlohmann::ordered_json j;
    j["route"] = cert.route;
    nlohmann::ordered_json rel = nlohmann::ordered_json::array();
    for (const Word& r : cert.presentation.relators) rel.push_back(word_json(r));
    j["relators"] = rel;
    if (cert.route == "amalgam-over-units") {
        nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < cert.pairs.size(); ++i) {
            nlohmann::ordered_json pj;
            pj["left"] = word_json(cert.pairs[i].first);
            pj["right"] = word_json(cert.pairs[i].second);
            pj["left_unit"] = unit_cert_json(cert.left_units[i]);
            pj["right_unit"] = unit_cert_json(cert.right_units[i]);
            pairs.push_back(pj);
        }
        j["pairs"] = pairs;
        nlohmann::ordered_json factors = nlohmann::ordered_json::array();
        for (const auto& f : cert.factors) factors.push_back(cert_json(*f));
        j["factors"] = factors;
    }
    return j;
}

} // namespace

std::string certificate_to_json(const EUnitaryCertificate& cert) {
    return cert_json(cert).dump(2);
}

} // namespace invmon
