#include <doctest.h>

#include "invmon/oracles.hpp"
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

void check_oracle_laws(const GroupOracle& o, std::uint64_t seed, int rounds = 100) {
    Rng rng(seed);
    for (int i = 0; i < rounds; ++i) {
        Word w = testutil::random_word(rng, o.alphabet, 8);
        CHECK(o.is_identity(reduce(w * invert(w))) == Answer::yes);
        // Invariance under free reduction.
        CHECK(o.is_identity(w) == o.is_identity(reduce(w)));
    }
}
} // namespace

TEST_CASE("free and cyclic leaves") {
    GroupOracle f = free_oracle(parse_alphabet("a b"));
    CHECK(f.is_identity(parse_word("a a'")) == Answer::yes);
    CHECK(f.is_identity(parse_word("a b")) == Answer::no);
    CHECK(f.is_identity(Word{}) == Answer::yes);
    check_oracle_laws(f, 41);

    GroupOracle c5 = cyclic_oracle(intern_symbol("a"), 5);
    CHECK(c5.is_identity(parse_word("a a a a a")) == Answer::yes);
    CHECK(c5.is_identity(parse_word("a a")) == Answer::no);
    GroupOracle c1 = cyclic_oracle(intern_symbol("a"), 1);
    CHECK(c1.is_identity(parse_word("a")) == Answer::yes);
    check_oracle_laws(c5, 42);
}

TEST_CASE("kb leaf: complete and incomplete") {
    GroupOracle ab = kb_oracle(make("a b", {"a b a' b'"}), 2000);
    CHECK(ab.is_identity(parse_word("a b a' b'")) == Answer::yes);
    CHECK(ab.is_identity(parse_word("a")) == Answer::no);
    CHECK(ab.has_normal_form());
    check_oracle_laws(ab, 43);

    GroupOracle c5 = kb_oracle(make("a", {"a a a a a"}), 500);
    CHECK(c5.is_identity(parse_word("a a a a a a a a' a'")) == Answer::yes);

    GroupOracle bs = kb_oracle(make("s t", {"s t t s t s"}), 200);
    CHECK(bs.is_identity(parse_word("s t t s t s")) == Answer::yes);
    CHECK(bs.is_identity(parse_word("s")) == Answer::inconclusive);
    CHECK_FALSE(bs.has_normal_form());
}

TEST_CASE("whitehead certificate recognizes free one-relator quotients") {
    // b is a^-2 in disguise: primitive relator.
    Presentation zn = make("a b", {"a a b"});
    auto cert = whitehead_free_certificate(zn);
    REQUIRE(cert.has_value());
    GroupOracle o = free_certificate_oracle(zn, *cert);
    CHECK(o.is_identity(parse_word("a a b")) == Answer::yes);
    CHECK(o.is_identity(parse_word("b a a")) == Answer::yes);
    CHECK(o.is_identity(parse_word("a")) == Answer::no);
    CHECK(o.is_identity(parse_word("b b a a a a")) == Answer::yes);
    check_oracle_laws(o, 44);

    // Klein-bottle shape is not free.
    CHECK_FALSE(whitehead_free_certificate(make("z w", {"z w w z"})).has_value());
}

TEST_CASE("soluble baumslag-solitar leaf") {
    auto o = solvable_bs_oracle(make("s t", {"s t t s t s"}));
    REQUIRE(o.has_value());
    CHECK(o->is_identity(parse_word("s t t s t s")) == Answer::yes);
    CHECK(o->is_identity(parse_word("s")) == Answer::no);
    CHECK(o->is_identity(parse_word("t")) == Answer::no);
    // tt = s^-2 t^-1 s^-1 follows from the relator.
    CHECK(o->is_identity(parse_word("t t s t s s")) == Answer::yes);
    check_oracle_laws(*o, 45);

    // Conjugates of the relator die too.
    Rng rng(46);
    Alphabet st = parse_alphabet("s t");
    Word rel = parse_word("s t t s t s");
    for (int i = 0; i < 50; ++i) {
        Word c = testutil::random_word(rng, st, 4);
        CHECK(o->is_identity(c * rel * invert(c)) == Answer::yes);
    }

    // The nf function is canonical where defined.
    for (int i = 0; i < 200; ++i) {
        Word x = testutil::random_word(rng, st, 6);
        Word y = testutil::random_word(rng, st, 6);
        auto nx = o->normal_form(x);
        auto ny = o->normal_form(y);
        if (!nx || !ny) continue;
        CHECK((*nx == *ny) == (o->is_identity(x * invert(y)) == Answer::yes));
    }

    // Klein (n = -1) must not be claimed.
    CHECK_FALSE(solvable_bs_oracle(make("z w", {"z w w z"})).has_value());
}

TEST_CASE("leaf ladder picks a workable leaf") {
    CHECK(leaf_oracle(make("a b", {}), 100)->name == "free");
    CHECK(leaf_oracle(make("a", {"a a a a a"}), 100)->name == "cyclic-5");
    CHECK(leaf_oracle(make("a b", {"a a b"}), 100)->name == "whitehead-free");
    CHECK(leaf_oracle(make("s t", {"s t t s t s"}), 100)->name == "bs--2");
    CHECK(leaf_oracle(make("z w", {"z w w z"}), 2000)->name == "kb");
    CHECK(leaf_oracle(make("p q r", {"p q r q r r p p q r q r"}), 100)->name ==
          "whitehead-free");
}

TEST_CASE("free products") {
    GroupOracle left = kb_oracle(make("a", {"a a"}), 200);
    GroupOracle right = free_oracle(parse_alphabet("b"));
    FreeProduct fp = free_product(left, right);
    CHECK(fp.oracle.is_identity(parse_word("a b")) == Answer::no);
    CHECK(fp.oracle.is_identity(parse_word("a a' b b'")) == Answer::yes);
    CHECK(fp.oracle.is_identity(parse_word("a b a b' a a")) == Answer::no);
    CHECK(fp.oracle.is_identity(parse_word("a b a a b' a")) == Answer::yes);

    SyllableForm sf = fp.normal_form_syllables(parse_word("a b"));
    REQUIRE(sf.syllables.size() == 2);
    CHECK(sf.syllables[0].side == 0);
    CHECK(sf.syllables[1].side == 1);
    CHECK(fp.normal_form_syllables(parse_word("a a'")).is_identity_form());

    // Restriction to one factor agrees with that factor.
    Rng rng(47);
    for (int i = 0; i < 60; ++i) {
        Word w = testutil::random_word(rng, left.alphabet, 6);
        CHECK(fp.oracle.is_identity(w) == left.is_identity(w));
        Word v = testutil::random_word(rng, right.alphabet, 6);
        CHECK(fp.oracle.is_identity(v) == right.is_identity(v));
    }
    check_oracle_laws(fp.oracle, 48);
}

TEST_CASE("amalgams over a cyclic subgroup") {
    GroupOracle fa = free_oracle(parse_alphabet("a"));
    GroupOracle fb = free_oracle(parse_alphabet("b"));
    Word u = parse_word("a a");
    Word v = parse_word("b b b");
    AmalgamProduct am = amalgam_product(fa, fb, {{u, v}}, cyclic_subgroup_oracle(fa, u),
                                        cyclic_subgroup_oracle(fb, v));
    CHECK(am.oracle.is_identity(parse_word("a a b' b' b'")) == Answer::yes);
    CHECK(am.oracle.is_identity(parse_word("a b")) == Answer::no);
    CHECK(am.oracle.is_identity(parse_word("a a a a b' b' b' b' b' b'")) == Answer::yes);
    CHECK(am.normal_form_syllables(parse_word("a b")).syllables.size() == 2);
    CHECK(am.normal_form_syllables(parse_word("a a b' b' b'")).is_identity_form());
    check_oracle_laws(am.oracle, 49);

    // Abelianization a -> 3, b -> 2 is an independent witness for rejections.
    Rng rng(50);
    Alphabet both = parse_alphabet("a b");
    int rejected = 0;
    for (int i = 0; i < 200 && rejected < 20; ++i) {
        Word w = testutil::random_word(rng, both, 8);
        long image = 0;
        for (const Letter& l : w.letters)
            image += l.sign * (l.symbol == intern_symbol("a") ? 3 : 2);
        if (image == 0) continue;
        CHECK(am.oracle.is_identity(w) == Answer::no);
        ++rejected;
    }
    CHECK(rejected == 20);

    // Canonical normal forms across the amalgam.
    for (int i = 0; i < 150; ++i) {
        Word x = testutil::random_word(rng, both, 6);
        Word y = testutil::random_word(rng, both, 6);
        auto nx = am.oracle.normal_form(x);
        auto ny = am.oracle.normal_form(y);
        REQUIRE(nx.has_value());
        REQUIRE(ny.has_value());
        CHECK((*nx == *ny) == (am.oracle.is_identity(x * invert(y)) == Answer::yes));
    }
}

TEST_CASE("inconclusive propagates through products") {
    GroupOracle vague;
    vague.name = "vague";
    vague.alphabet = parse_alphabet("a");
    vague.is_identity = [](const Word& w) {
        return reduce(w).empty() ? Answer::yes : Answer::inconclusive;
    };
    GroupOracle fb = free_oracle(parse_alphabet("b"));
    GroupOracle fp = free_product_oracle(vague, fb);
    CHECK(fp.is_identity(parse_word("a b")) == Answer::inconclusive);
    CHECK(fp.is_identity(parse_word("b")) == Answer::no);
    CHECK(fp.is_identity(parse_word("a a'")) == Answer::yes);
}

TEST_CASE("memoized oracles answer identically") {
    GroupOracle base = kb_oracle(make("z w", {"z w w z"}), 2000);
    GroupOracle memo = memoized(base);
    Rng rng(51);
    for (int i = 0; i < 100; ++i) {
        Word w = testutil::random_word(rng, base.alphabet, 8);
        CHECK(memo.is_identity(w) == base.is_identity(w));
        CHECK(memo.normal_form(w) == base.normal_form(w));
        CHECK(memo.is_identity(w) == base.is_identity(w)); // cached path
    }
}
