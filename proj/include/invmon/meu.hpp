#ifndef INVMON_MEU_HPP
#define INVMON_MEU_HPP

#include <optional>

#include "invmon/oracles.hpp"
#include "invmon/prefix_membership.hpp"
#include "invmon/presentation.hpp"

namespace invmon {

// Word-problem context for the maximal E-unitary image: the group oracle plus
// the prefix membership oracle. Elements are modeled as pairs (saturated
// prefix set, group image); equality of the set components reduces to the
// finite mutual-domination check because P·P = P.
struct MeuContext {
    Presentation pres;
    GroupOracle group;
    PrefixMembershipOracle prefix;
};

Answer meu_equal(const MeuContext& ctx, const Word& u, const Word& v);

Answer is_idempotent(const MeuContext& ctx, const Word& w);

struct RightUnitVerdict {
    Answer result;        // w w^-1 = 1, the right-unit test itself
    Answer sigma_in_p;    // sigma(w) in P, membership in R·E per the lemma
    bool consistency_fault = false; // result yes but sigma_in_p no
};
RightUnitVerdict is_right_unit(const MeuContext& ctx, const Word& w);

Answer is_unit(const MeuContext& ctx, const Word& w);

Answer nat_leq(const MeuContext& ctx, const Word& x, const Word& y);

Answer compatible(const MeuContext& ctx, const Word& x, const Word& y);

struct MeetResult {
    Answer defined;
    Word value; // x x^-1 y, when defined = yes
};
MeetResult meet(const MeuContext& ctx, const Word& x, const Word& y);

} // namespace invmon

#endif
