#ifndef INVMON_ORACLES_HPP
#define INVMON_ORACLES_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "invmon/presentation.hpp"
#include "invmon/rewriting.hpp"
#include "invmon/words.hpp"

namespace invmon {

// Three-valued oracle answers; inconclusive is an in-band result, never an
// exception, so composed oracles degrade transparently.
enum class Answer { yes, no, inconclusive };

inline const char* to_string(Answer a) {
    switch (a) {
        case Answer::yes: return "yes";
        case Answer::no: return "no";
        default: return "inconclusive";
    }
}

// Word-problem oracle for a group presented on `alphabet`. normal_form, when
// present, returns a canonical representative word (equal elements map to the
// identical word) or nullopt when the instance cannot canonicalize a query.
struct GroupOracle {
    std::string name;
    Alphabet alphabet;
    std::function<Answer(const Word&)> is_identity;
    std::function<std::optional<Word>(const Word&)> normal_form;

    bool has_normal_form() const { return static_cast<bool>(normal_form); }
    Answer equal(const Word& u, const Word& v) const { return is_identity(u * invert(v)); }
};

GroupOracle free_oracle(const Alphabet& alphabet);
GroupOracle cyclic_oracle(SymbolId letter, int modulus);

// Shortlex Knuth-Bendix leaf. Exact when completion succeeds within budget;
// otherwise answers yes (when a word rewrites to 1) or inconclusive.
GroupOracle kb_oracle(const Presentation& p, int completion_budget);
GroupOracle kb_oracle(std::shared_ptr<const RewriteSystem> system);

// Certificate that the presented group is free: a composed automorphism of
// the ambient free group sending each relator to (a conjugate of) a single
// letter, plus the letters killed that way.
struct FreeCertificate {
    std::map<SymbolId, Word> automorphism;
    std::vector<SymbolId> killed;
    Alphabet remaining;
};
std::optional<FreeCertificate> whitehead_free_certificate(const Presentation& p);
GroupOracle free_certificate_oracle(const Presentation& p, const FreeCertificate& cert);

// Exact oracle for two-generator one-relator presentations recognized (after
// a short change of generators) as a soluble Baumslag-Solitar relation
// t^-1 a t = a^n with |n| >= 2, evaluated through the faithful affine
// representation a: x -> x+1, t: x -> x/n over exact dyadic-style rationals.
std::optional<GroupOracle> solvable_bs_oracle(const Presentation& p);

// Leaf selection ladder: free / cyclic / whitehead-free / soluble BS / KB.
std::optional<GroupOracle> leaf_oracle(const Presentation& p, int kb_budget);

struct Syllable {
    int side; // 0 = left factor, 1 = right factor
    Word word;
};

struct SyllableForm {
    std::vector<Syllable> syllables;
    Answer status = Answer::yes; // inconclusive if some identity test failed
    bool is_identity_form() const { return status == Answer::yes && syllables.empty(); }
};

// Constructive membership in a distinguished finitely generated subgroup:
// decision plus an expression over the subgroup's generator list.
struct SubgroupMembership {
    Answer member = Answer::inconclusive;
    std::vector<std::pair<int, int>> expression;
};
struct ConstructiveSubgroupOracle {
    std::function<SubgroupMembership(const Word&)> contains;
};

// Membership in the cyclic subgroup <u> of `ambient`, by normal-form matching
// against powers of u (exact on free leaves, window-validated elsewhere).
ConstructiveSubgroupOracle cyclic_subgroup_oracle(const GroupOracle& ambient, const Word& u);

class FreeProductContext;
class AmalgamContext;

struct FreeProduct {
    std::shared_ptr<const FreeProductContext> context;
    GroupOracle oracle;
    SyllableForm normal_form_syllables(const Word& w) const;
};

struct AmalgamProduct {
    std::shared_ptr<const AmalgamContext> context;
    GroupOracle oracle;
    SyllableForm normal_form_syllables(const Word& w) const;
};

FreeProduct free_product(GroupOracle left, GroupOracle right);
AmalgamProduct amalgam_product(GroupOracle left, GroupOracle right,
                               std::vector<std::pair<Word, Word>> pairs,
                               ConstructiveSubgroupOracle left_member,
                               ConstructiveSubgroupOracle right_member);

// Convenience wrappers matching the leaf constructors.
GroupOracle free_product_oracle(GroupOracle left, GroupOracle right);
GroupOracle amalgam_oracle(GroupOracle left, GroupOracle right,
                           std::vector<std::pair<Word, Word>> pairs,
                           ConstructiveSubgroupOracle left_member,
                           ConstructiveSubgroupOracle right_member);

// Shortlex on an alphabet's declaration order, for canonical choices.
bool shortlex_less(const Alphabet& alphabet, const Word& a, const Word& b);

// Caching layer over an oracle; composed towers requery the same syllables
// heavily during coset canonicalization.
GroupOracle memoized(GroupOracle inner, std::size_t cache_cap = (1u << 22));

} // namespace invmon

#endif
