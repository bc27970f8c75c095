#include <doctest.h>

#include "invmon/rewriting.hpp"
#include "test_util.hpp"

using namespace invmon;
using testutil::Rng;

namespace {
Presentation make(const char* gens, std::initializer_list<const char*> rels) {
    Presentation p;
    p.kind = PresentationKind::group;
    p.alphabet = parse_alphabet(gens);
    for (const char* r : rels) p.relators.push_back(parse_word(r));
    return p;
}
} // namespace

TEST_CASE("completion on small groups") {
    RewriteSystem zn = knuth_bendix(make("a b", {"a a b"}), 2000);
    CHECK(zn.complete());
    CHECK(zn.normal_form(parse_word("a a b")).empty());
    CHECK(zn.normal_form(parse_word("b a a")).empty());
    CHECK_FALSE(zn.normal_form(parse_word("a")).empty());

    RewriteSystem klein = knuth_bendix(make("z w", {"z w w z"}), 2000);
    CHECK(klein.complete());
    CHECK(klein.normal_form(parse_word("z w w z")).empty());
    CHECK_FALSE(klein.normal_form(parse_word("w w")).empty());
    // z^-2 = w^2 holds in this group.
    CHECK(klein.normal_form(parse_word("w w z z")).empty());
}

TEST_CASE("free abelian rank two") {
    RewriteSystem ab = knuth_bendix(make("a b", {"a b a' b'"}), 2000);
    CHECK(ab.complete());
    CHECK(ab.normal_form(parse_word("a b a' b'")).empty());
    CHECK(ab.normal_form(parse_word("b a")) == ab.normal_form(parse_word("a b")));
    CHECK_FALSE(ab.normal_form(parse_word("a b")).empty());

    // Exact check against the integer lattice on random words.
    Rng rng(21);
    Alphabet two = parse_alphabet("a b");
    for (int i = 0; i < 100; ++i) {
        Word w = testutil::random_word(rng, two, 10);
        long ea = 0, eb = 0;
        for (const Letter& l : w.letters)
            (l.symbol == intern_symbol("a") ? ea : eb) += l.sign;
        CHECK((ea == 0 && eb == 0) == ab.normal_form(w).empty());
    }
}

TEST_CASE("finite cyclic exponent arithmetic") {
    RewriteSystem c5 = knuth_bendix(make("a", {"a a a a a"}), 500);
    CHECK(c5.complete());
    CHECK(c5.normal_form(parse_word("a a a a a a a a' a'")).empty());
    CHECK_FALSE(c5.normal_form(parse_word("a a")).empty());
}

TEST_CASE("relator words and their conjugates rewrite to the identity") {
    Presentation p = make("z w", {"z w w z"});
    RewriteSystem rs = knuth_bendix(p, 2000);
    Rng rng(22);
    for (int i = 0; i < 50; ++i) {
        Word c = testutil::random_word(rng, p.alphabet, 5);
        Word conj = c * p.relators[0] * invert(c);
        CHECK(rs.normal_form(conj).empty());
        CHECK(rs.normal_form(reduce(conj * p.relators[0])).empty());
    }
}

TEST_CASE("unique normal forms on a completed system") {
    Presentation p = make("a b", {"a b a' b'"});
    RewriteSystem rs = knuth_bendix(p, 2000);
    REQUIRE(rs.complete());
    Rng rng(23);
    for (int i = 0; i < 100; ++i) {
        Word w = testutil::random_word(rng, p.alphabet, 8);
        // Insert a random conjugated relator: the normal form must not move.
        Word c = testutil::random_word(rng, p.alphabet, 3);
        Word padded = w * c * p.relators[0] * invert(c);
        CHECK(rs.normal_form(w) == rs.normal_form(padded));
    }
}

TEST_CASE("budget exhaustion is reported, not hidden") {
    // Baumslag-Solitar-shaped relator: shortlex completion diverges.
    RewriteSystem bs = knuth_bendix(make("s t", {"s t t s t s"}), 300);
    CHECK_FALSE(bs.complete());
    // Sound direction still works.
    CHECK(bs.normal_form(parse_word("s t t s t s")).empty());
}
