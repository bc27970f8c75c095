#ifndef INVMON_PREFIX_MEMBERSHIP_HPP
#define INVMON_PREFIX_MEMBERSHIP_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "invmon/factorisation.hpp"
#include "invmon/free_group.hpp"
#include "invmon/oracles.hpp"
#include "invmon/presentation.hpp"
#include "invmon/structure.hpp"

namespace invmon {

struct PrefixGeneratorSet {
    std::vector<Word> generators;
    std::string provenance; // "relator prefixes" | "factor prefixes both signs"
};

PrefixGeneratorSet prefix_generators(const Presentation& p);
PrefixGeneratorSet prefix_generators(const Presentation& p, const Factorisation& f);

struct PipelineNotApplicable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Membership in <Z ∪ Q> ≤ H * FG(X') where the H-component is all of H:
// every free-part syllable of the product normal form must lie in the Benois
// automaton's submonoid; H-syllables are unconstrained.
class UmlPrefixPipeline {
public:
    UmlPrefixPipeline(Presentation p, Factorisation f, MarkerAssignment m, GroupOracle g);

    Answer contains(const Word& w, std::vector<std::string>* trace = nullptr) const;
    const UmlDecomposition& decomposition() const { return dec_; }
    const FoldedGraph& q_automaton() const { return q_automaton_; }

private:
    Presentation pres_;
    UmlDecomposition dec_;
    FoldedGraph q_automaton_;
    GroupOracle g_;
};

// Recursive descent along the disjoint-alphabet chain: at each amalgam level
// a syllable must lie in its side's intersection submonoid; the free-factor
// side is a Benois test on the factor's prefixes, the other side recurses.
class DaPrefixPipeline {
public:
    DaPrefixPipeline(Presentation p, Factorisation f, std::vector<int> orders, GroupOracle g);

    Answer contains(const Word& w, std::vector<std::string>* trace = nullptr) const;
    const DaChain& chain() const { return chain_; }

private:
    Answer decide_level(std::size_t level, const Word& w, std::vector<std::string>* trace) const;
    Answer side_identity(std::size_t level, int side, const Word& w) const;

    Presentation pres_;
    DaChain chain_;
    GroupOracle g_;
    std::vector<GroupOracle> factor_oracles_;           // B_j word problems
    std::vector<FoldedGraph> factor_prefix_automata_;   // Benois over pref(u_j^±), when B_j free
};

// Assembled prefix-membership decision procedure for one presentation file.
struct PrefixMembershipOracle {
    std::string pipeline;      // "free-benois" | "uniquely-marked" | "disjoint-alphabets"
    std::string certification; // how conservativity was established
    PrefixGeneratorSet generators;
    std::function<Answer(const Word&, std::vector<std::string>*)> contains_traced;

    Answer contains(const Word& w) const { return contains_traced(w, nullptr); }
};

// Dispatches on the file: hidden-marker rewrite first, then free-group
// Benois, uniquely marked, or disjoint alphabets. Throws PipelineNotApplicable
// with a reason when nothing fits. `rewritten` (optional) receives the
// rewritten presentation when the hidden-marker route fires.
PrefixMembershipOracle build_prefix_membership(const PresentationFile& file, const GroupOracle& g,
                                               PresentationFile* rewritten = nullptr);

} // namespace invmon

#endif
