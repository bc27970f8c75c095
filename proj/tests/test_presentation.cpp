#include <doctest.h>

#include "invmon/presentation.hpp"
#include "test_util.hpp"

using namespace invmon;

TEST_CASE("parse a factorised presentation") {
    PresentationFile f = parse_presentation_file(
        "# a comment\n"
        "inverse_monoid\n"
        "generators: a x b y\n"
        "relator: ( a x b ) ( a y b ) ( a x b )'\n");
    CHECK(f.pres.kind == PresentationKind::inverse_monoid);
    REQUIRE(f.pres.relators.size() == 1);
    CHECK(f.pres.relators[0] == parse_word("a x b a y b b' x' a'"));
    REQUIRE(f.fact.has_value());
    REQUIRE(f.fact->factors.size() == 2);
    CHECK(f.fact->factors[0] == parse_word("a x b"));
    CHECK(f.fact->factors[1] == parse_word("a y b"));
    REQUIRE(f.fact->occurrences[0].size() == 3);
    CHECK(f.fact->occurrences[0][2].factor == 0);
    CHECK(f.fact->occurrences[0][2].sign == -1);
}

TEST_CASE("bare atoms inside a factorised file are singleton factors") {
    PresentationFile f = parse_presentation_file(
        "group\ngenerators: z1 z2\nrelator: z1 z2'\nrelator: ( z1 z2 )\n");
    REQUIRE(f.fact.has_value());
    CHECK(f.fact->factors.size() == 3); // z1, z2, z1 z2
    CHECK(f.fact->occurrences[0][1].sign == -1);
}

TEST_CASE("unfactorised files get the trivial factorisation") {
    PresentationFile f =
        parse_presentation_file("group\ngenerators: a b\nrelator: a a b\nrelator: a a b\n");
    CHECK(!f.fact.has_value());
    Factorisation t = f.factorisation();
    CHECK(t.factors.size() == 1);
    CHECK(t.occurrences.size() == 2);
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(parse_presentation_file("group\nrelator: a\n"), ParseError);
    CHECK_THROWS_AS(parse_presentation_file("monoid\n"), ParseError);
    CHECK_THROWS_AS(
        parse_presentation_file("group\ngenerators: a\nrelator: ( a\n"), ParseError);
    CHECK_THROWS_AS(parse_presentation_file("group\ngenerators: a\nrelator: b\n"),
                    std::invalid_argument);
    try {
        parse_presentation_file("group\ngenerators: a\nbogus: 1\n");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
    }
}

TEST_CASE("print/parse round trip on the shipped files") {
    for (const char* name :
         {"bicyclic.pres", "zn_aab.pres", "zn_aba.pres", "uml_copy1.pres", "uml_amalgam.pres",
          "da_copy1.pres", "da_amalgam.pres", "ohare_copy1.pres", "ohare_amalgam.pres"}) {
        PresentationFile f = load_presentation_file(testutil::data_path(name));
        std::string printed = print_presentation_file(f);
        PresentationFile g = parse_presentation_file(printed);
        CHECK(f == g);
        CHECK(print_presentation_file(g) == printed);
    }
}

TEST_CASE("oracle and meta lines") {
    PresentationFile f = parse_presentation_file(
        "inverse_monoid\n"
        "generators: a\n"
        "relator: a a'\n"
        "oracle: cyclic 5\n"
        "unital: asserted\n");
    CHECK(f.oracle.kind == OracleSpec::Kind::cyclic);
    CHECK(f.oracle.modulus == 5);
    CHECK(f.unital_asserted);

    PresentationFile g = load_presentation_file(testutil::data_path("ohare_amalgam.pres"));
    CHECK(g.oracle.kind == OracleSpec::Kind::amalgam);
    CHECK(g.amalgam_pairs.size() == 1);
    CHECK(g.amalgam_pairs[0].first == parse_word("a1 b1 b1 c1 d1"));
    CHECK(g.hidden.size() == 2);
    CHECK(g.hidden[0].w_set.size() == 4);
    CHECK(g.hidden[0].witnesses.size() == 2);
}
