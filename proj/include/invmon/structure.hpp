#ifndef INVMON_STRUCTURE_HPP
#define INVMON_STRUCTURE_HPP

#include <map>
#include <stdexcept>
#include <vector>

#include "invmon/factorisation.hpp"
#include "invmon/presentation.hpp"

namespace invmon {

// Pick a symbol named like `base` that collides with none of the alphabets.
SymbolId fresh_symbol(const std::string& base, const std::vector<Alphabet>& avoid);

// Deterministic bridge-generator name for a factor word (used so that the
// bridge symbols of distinct presentations never clash).
std::string bridge_name(const Word& factor);

// G presented on uniquely marked factors splits as H * FG(X'), where H is the
// occurrence-pattern presentation on one fresh generator per factor.
struct UmlDecomposition {
    Presentation h;                  // over the fresh bridge symbols
    Alphabet free_part;              // X' = X minus the marker letters
    std::vector<SymbolId> bridges;   // per factor
    struct Split {
        Word before;   // p_j
        Word after;    // q_j
        Letter marker; // the unique occurrence, with its sign
    };
    std::vector<Split> splits;           // per factor
    std::map<SymbolId, Word> forward;    // X -> words over bridges ∪ X'
    std::map<SymbolId, Word> backward;   // bridge -> factor word

    Word translate(const Word& w) const;      // forward, freely reduced
    Word untranslate(const Word& w) const;    // backward substitution, reduced
};

UmlDecomposition uml_decompose(const Presentation& p, const Factorisation& f,
                               const MarkerAssignment& m);

// Chain of amalgamations peeling one alphabetically disjoint factor per level.
struct DaChainLevel {
    Presentation upper;      // G_j (contains the bridge symbol z_j)
    Presentation factor;     // B_j = <X_j | u_j^{m_j}> (free when m_j = 0)
    Alphabet support;        // X_j
    Word u;                  // u_j, a word over X_j
    SymbolId z;              // z_j
    int order = 0;           // m_j; 0 = infinite
};

struct DaChain {
    Presentation base;                 // G_0, the input
    std::vector<DaChainLevel> levels;  // j = 1..k
    Presentation h;                    // H over the bridge symbols
    Alphabet x0;                       // leftover letters
    std::map<SymbolId, Word> backward; // bridge -> factor word (original letters)

    // Substitute every bridge symbol by its factor word.
    Word untranslate(const Word& w) const;
};

// orders: one tag per factor (0 = infinite); empty means auto-derive, which
// accepts exactly the nonempty reduced factors (infinite order in the free
// factor group B_j). Throws when a factor needs a caller-supplied tag.
DaChain da_chain(const Presentation& p, const Factorisation& f, std::vector<int> orders = {});

struct ChangeUnitsResult {
    Presentation pres;
    Factorisation fact;
};

// Rewrites the relators over a new factor set V with <V> = <U> in the free
// group; each rewritten relator freely reduces to the reduction of the old
// one. Throws std::invalid_argument naming the offending generator when the
// subgroups differ.
ChangeUnitsResult change_units(const Presentation& p, const Factorisation& f,
                               const std::vector<Word>& new_factors);

struct HiddenUmlError : std::runtime_error {
    int condition;
    HiddenUmlError(int c, const std::string& what)
        : std::runtime_error("hidden marker condition " + std::to_string(c) + " fails: " + what),
          condition(c) {}
};

struct HiddenUmlResult {
    Presentation pres;
    Factorisation fact;
    MarkerAssignment markers;
    std::vector<Word> new_factors; // the substituted generating set V
};

// Verifies the four hidden-marker conditions, proves <U> = <V> via the
// subgroup graphs, and rewrites through change_units. The result is uniquely
// marked.
HiddenUmlResult hidden_uml_rewrite(const Presentation& p, const Factorisation& f,
                                   const std::vector<HiddenBlock>& blocks);

// H = <z_1..z_k | occurrence patterns>, valid when the factorisation is
// uniquely marked or alphabetically disjoint.
Presentation units_group_presentation(const Presentation& p, const Factorisation& f);

} // namespace invmon

#endif
