#include <doctest.h>

#include "invmon/stephen.hpp"
#include "test_util.hpp"

using namespace invmon;

namespace {
Presentation bicyclic() {
    Presentation p;
    p.kind = PresentationKind::inverse_monoid;
    p.alphabet = parse_alphabet("a");
    p.relators.push_back(parse_word("a a'"));
    return p;
}
} // namespace

TEST_CASE("approximants read their own word at every budget") {
    Presentation p = bicyclic();
    for (int rounds : {0, 1, 2, 3}) {
        StephenApproximant approx(p, parse_word("a a a'"), rounds);
        CHECK(approx.reads(parse_word("a a a'")));
    }
    Presentation empty;
    empty.kind = PresentationKind::inverse_monoid;
    empty.alphabet = parse_alphabet("a");
    StephenApproximant trivial(empty, Word{}, 2);
    CHECK(trivial.vertex_count() == 1);
    CHECK(trivial.reads(Word{}));
}

TEST_CASE("bicyclic shape: a a' = 1 but a' a stays unknown") {
    Presentation p = bicyclic();
    CHECK(stephen_equal(p, parse_word("a a'"), Word{}, 1) == SemiDecision::equal);
    CHECK(stephen_equal(p, parse_word("a' a"), Word{}, 4) == SemiDecision::unknown);
    CHECK(stephen_equal(p, parse_word("a' a"), Word{}, 6) == SemiDecision::unknown);
}

TEST_CASE("relators die quickly") {
    Presentation p;
    p.kind = PresentationKind::inverse_monoid;
    p.alphabet = parse_alphabet("x y z");
    p.relators.push_back(parse_word("z x x y x x y z"));
    CHECK(stephen_equal(p, p.relators[0], Word{}, 2) == SemiDecision::equal);
    CHECK(stephen_equal(p, Word{}, p.relators[0], 2) == SemiDecision::equal);
}

TEST_CASE("readable languages grow with the budget") {
    Presentation p = bicyclic();
    Word w = parse_word("a a a'");
    testutil::Rng rng(71);
    std::vector<Word> probes;
    for (int i = 0; i < 40; ++i) probes.push_back(testutil::random_word(rng, p.alphabet, 5));
    StephenApproximant small(p, w, 1);
    StephenApproximant big(p, w, 3);
    for (const Word& v : probes)
        if (small.reads(v)) CHECK(big.reads(v));
}

TEST_CASE("symmetry of the semidecision") {
    Presentation p = bicyclic();
    testutil::Rng rng(72);
    for (int i = 0; i < 25; ++i) {
        Word u = testutil::random_word(rng, p.alphabet, 4);
        Word v = testutil::random_word(rng, p.alphabet, 4);
        CHECK(stephen_equal(p, u, v, 2) == stephen_equal(p, v, u, 2));
    }
}

TEST_CASE("dot export highlights the endpoints") {
    Presentation p = bicyclic();
    StephenApproximant approx(p, parse_word("a"), 1);
    std::string dot = approx.to_dot();
    CHECK(dot.find("start") != std::string::npos);
    CHECK(dot.find("end") != std::string::npos);
}
