#ifndef INVMON_FACTORISATION_HPP
#define INVMON_FACTORISATION_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "invmon/oracles.hpp"
#include "invmon/presentation.hpp"

namespace invmon {

struct FactorisationCheck {
    bool ok = true;
    std::string error; // first mismatch, when !ok
};

// Confirms the concatenation and coverage invariants.
FactorisationCheck validate_factorisation(const Presentation& p, const Factorisation& f);

// Marker letter per factor: occurs exactly once in its factor (either sign)
// and not at all in any other factor.
struct MarkerAssignment {
    std::map<int, SymbolId> marker; // factor index -> symbol
};
std::optional<MarkerAssignment> detect_uniquely_marked(const Factorisation& f);

// k >= 2 factors with pairwise disjoint symbol supports.
bool detect_alphabetically_disjoint(const Factorisation& f);

// One closure step: how a word entered the certified-unit set.
struct AdjanStep {
    std::string rule; // "relator" | "inverse" | "overlap" | "stephen"
    Word word;
    Word parent_left;  // overlap: unit with `word` as suffix (certifying left invertibility)
    Word parent_right; // overlap: unit with `word` as prefix
    int relator_index = -1;
    int stephen_rounds = 0;
};

struct UnitCertificate {
    Word word;
    std::vector<AdjanStep> derivation; // ancestors in application order
};

struct AdjanClosure {
    std::vector<AdjanStep> steps;
    std::vector<Word> units; // distinct certified words, derivation order
    bool budget_exhausted = false;

    bool certifies(const Word& w) const;
    std::optional<UnitCertificate> certificate_for(const Word& w) const;
};

// Least fixpoint (within budget, counted in rule applications) of:
//   - every relator and its formal inverse is a unit;
//   - overlap rule: a common suffix of one unit and prefix of another is a
//     unit, and so are the two complements;
//   - optionally, hint words verified as two-sided units by the Stephen
//     semi-decision (w w^-1 = 1 and w^-1 w = 1 within the round budget).
AdjanClosure adjan_unit_closure(const Presentation& p, int budget,
                                const std::vector<Word>& stephen_hints = {},
                                int stephen_rounds = 4);

// Re-verifies every step of a closure against the presentation.
bool replay_adjan(const Presentation& p, const AdjanClosure& closure, int stephen_rounds = 4);

// Mutual generation of the relator-prefix monoid and the factor-prefix
// monoid, through caller-supplied membership tests.
Answer check_conservative(const Presentation& p, const Factorisation& f,
                          const std::function<Answer(const Word&)>& in_prefix_monoid,
                          const std::function<Answer(const Word&)>& in_factor_prefix_monoid);

// Nonempty prefixes of all relators (the prefix monoid's defining generators).
std::vector<Word> relator_prefixes(const Presentation& p);
// Nonempty prefixes of u and u^-1 for every factor u.
std::vector<Word> factor_prefixes_full(const Factorisation& f);

} // namespace invmon

#endif
