#include "invmon/meu.hpp"

namespace invmon {

namespace {

// Every prefix of u must be dominated by some prefix of v: q^-1 p in P.
Answer dominated(const MeuContext& ctx, const Word& u, const Word& v) {
    bool saw_inconclusive = false;
    for (const Word& p : prefixes(u)) {
        bool found = false;
        bool local_inconclusive = false;
        for (const Word& q : prefixes(v)) {
            Answer a = ctx.prefix.contains(reduce(invert(q) * p));
            if (a == Answer::yes) {
                found = true;
                break;
            }
            if (a == Answer::inconclusive) local_inconclusive = true;
        }
        if (!found) {
            if (local_inconclusive)
                saw_inconclusive = true;
            else
                return Answer::no;
        }
    }
    return saw_inconclusive ? Answer::inconclusive : Answer::yes;
}

Answer answer_and(Answer a, Answer b) {
    if (a == Answer::no || b == Answer::no) return Answer::no;
    if (a == Answer::inconclusive || b == Answer::inconclusive) return Answer::inconclusive;
    return Answer::yes;
}

} // namespace

Answer meu_equal(const MeuContext& ctx, const Word& u, const Word& v) {
    if (u == v) return Answer::yes;
    Answer group_eq = ctx.group.is_identity(reduce(u * invert(v)));
    if (group_eq == Answer::no) return Answer::no;
    Answer dom = answer_and(dominated(ctx, u, v), dominated(ctx, v, u));
    return answer_and(group_eq, dom);
}

Answer is_idempotent(const MeuContext& ctx, const Word& w) {
    return ctx.group.is_identity(w);
}

RightUnitVerdict is_right_unit(const MeuContext& ctx, const Word& w) {
    RightUnitVerdict out;
    out.result = meu_equal(ctx, w * invert(w), Word{});
    out.sigma_in_p = ctx.prefix.contains(w);
    // R ⊆ R·E, so a right unit whose image misses P is a soundness fault.
    out.consistency_fault = (out.result == Answer::yes && out.sigma_in_p == Answer::no);
    return out;
}

Answer is_unit(const MeuContext& ctx, const Word& w) {
    return answer_and(meu_equal(ctx, w * invert(w), Word{}),
                      meu_equal(ctx, invert(w) * w, Word{}));
}

Answer nat_leq(const MeuContext& ctx, const Word& x, const Word& y) {
    return meu_equal(ctx, x, x * invert(x) * y);
}

Answer compatible(const MeuContext& ctx, const Word& x, const Word& y) {
    return answer_and(is_idempotent(ctx, x * invert(y)), is_idempotent(ctx, invert(x) * y));
}

MeetResult meet(const MeuContext& ctx, const Word& x, const Word& y) {
    MeetResult out;
    out.defined = compatible(ctx, x, y);
    if (out.defined == Answer::yes) out.value = x * invert(x) * y;
    return out;
}

} // namespace invmon
