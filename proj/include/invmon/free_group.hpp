#ifndef INVMON_FREE_GROUP_HPP
#define INVMON_FREE_GROUP_HPP

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "invmon/words.hpp"

namespace invmon {

// A labeled directed graph with a base vertex, used three ways: Stallings
// subgroup graph (folded, inverse-closed), Benois submonoid automaton
// (nondeterministic, with epsilon edges), Stephen approximant (via stephen.hpp).
struct FoldedGraph {
    enum class Mode { subgroup, submonoid };

    struct Edge {
        int source;
        Letter label;
        int target;
    };

    Mode mode = Mode::subgroup;
    int base = 0;
    int vertex_count = 1;
    std::vector<Edge> edges;                    // positive-letter edges in subgroup mode
    std::vector<std::pair<int, int>> epsilons;  // submonoid (Benois) mode only
    std::vector<Word> generators;               // what the graph was built from

    std::string to_dot() const;
};

// Expression of a word as a product of generators: (generator index, sign)*.
struct MembershipWitness {
    std::vector<std::pair<int, int>> expression;

    Word evaluate(const std::vector<Word>& generators) const;
};

// Folded base-pointed subgroup graph; loops at the base spell exactly <generators>.
FoldedGraph stallings_graph(const std::vector<Word>& generators);

bool subgroup_contains(const FoldedGraph& graph, const Word& w);
std::optional<MembershipWitness> subgroup_witness(const FoldedGraph& graph, const Word& w);

// Saturated Benois automaton accepting the reduced forms of the submonoid
// generated by the given words.
FoldedGraph benois_automaton(const std::vector<Word>& generators);

bool submonoid_contains(const FoldedGraph& automaton, const Word& w);

// Stallings graph of the group of invertible elements of the submonoid,
// computed as the intersection of the accepted language with its inverse.
FoldedGraph submonoid_units(const FoldedGraph& automaton);

// Canonical signature of a folded subgroup graph under base-pointed
// isomorphism (breadth-first relabeling along a fixed letter order).
std::string canonical_signature(const FoldedGraph& graph, const Alphabet& order);

// Nielsen-reduced basis of <generators> with expressions: basis[i] as a word,
// and over[i] the expression of basis[i] over the input generators.
struct NielsenBasis {
    std::vector<Word> basis;
    std::vector<std::vector<std::pair<int, int>>> over_generators;
};
NielsenBasis nielsen_reduce(const std::vector<Word>& generators);

} // namespace invmon

#endif
