#ifndef INVMON_REWRITING_HPP
#define INVMON_REWRITING_HPP

#include <cstddef>
#include <vector>

#include "invmon/presentation.hpp"
#include "invmon/words.hpp"

namespace invmon {

// A shortlex string-rewriting system over the signed letters of an alphabet.
// The letter order is declaration order with x' immediately after x.
class RewriteSystem {
public:
    struct Rule {
        Word lhs;
        Word rhs;
    };

    explicit RewriteSystem(Alphabet alphabet);

    const Alphabet& alphabet() const { return alphabet_; }
    const std::vector<Rule>& rules() const { return rules_; }
    bool complete() const { return complete_; }

    int letter_rank(const Letter& l) const;
    // <0, 0, >0 as a compares below, equal to, above b in shortlex.
    int compare(const Word& a, const Word& b) const;

    Word normal_form(Word w) const;

    // Runs completion from the group axioms plus relator -> 1 rules.
    // max_rules bounds the live rule count; the processed-equation budget
    // scales with it.
    void complete_from(const std::vector<Word>& relators, int max_rules);

private:
    void reindex();

    Alphabet alphabet_;
    std::vector<Rule> rules_;
    std::vector<std::vector<std::size_t>> buckets_; // first-letter rank -> rule ids
    std::size_t max_lhs_ = 1;
    bool complete_ = false;
};

// Shortlex Knuth-Bendix completion of a group presentation. The returned
// system is exact (confluent) iff complete() is true; otherwise its rules are
// still sound consequences of the relations.
RewriteSystem knuth_bendix(const Presentation& p, int max_rules);

} // namespace invmon

#endif
