#include <doctest.h>

#include <fstream>
#include "invmon/commands.hpp"
#include "test_util.hpp"

using namespace invmon;
using testutil::data_path;

TEST_CASE("analyze reports classes and certificates") {
    CommandOptions opts;
    Json v = cmd_analyze(data_path("uml_amalgam.pres"), opts);
    CHECK(v["factorisation"]["uniquely_marked"] == true);
    CHECK(v["units"]["factorisation_unital"] == "via closure");
    CHECK(v["eunitary"]["certified"] == true);
    CHECK(v["eunitary"]["route"] == "amalgam-over-units");

    Json copy = cmd_analyze(data_path("uml_copy1.pres"), opts);
    CHECK(copy["eunitary"]["route"] == "single-cyclically-reduced");

    Json da = cmd_analyze(data_path("da_amalgam.pres"), opts);
    CHECK(da["factorisation"]["alphabetically_disjoint"] == true);
    CHECK(da["eunitary"]["certified"] == true);
}

TEST_CASE("analyze emits the hidden-marker rewrite") {
    CommandOptions opts;
    Json v = cmd_analyze(data_path("ohare_copy1.pres"), opts);
    REQUIRE(v.contains("hidden_rewrite"));
    CHECK(v["hidden_rewrite"]["applied"] == true);
    std::string text = v["hidden_rewrite"]["presentation"].get<std::string>();
    PresentationFile rewritten = parse_presentation_file(text);
    PresentationFile original = load_presentation_file(data_path("ohare_copy1.pres"));
    REQUIRE(rewritten.pres.relators.size() == 1);
    CHECK(reduce(rewritten.pres.relators[0]) == reduce(original.pres.relators[0]));
}

TEST_CASE("pmp command verdicts") {
    CommandOptions opts;
    Json yes = cmd_pmp(data_path("zn_aab.pres"), parse_word("a"), opts);
    CHECK(yes["member"] == true);
    CHECK(yes["pipeline"] == "uniquely-marked");
    Json no = cmd_pmp(data_path("zn_aab.pres"), parse_word("b"), opts);
    CHECK(no["member"] == false);
    Json zee = cmd_pmp(data_path("zn_aba.pres"), parse_word("a'"), opts);
    CHECK(zee["member"] == true);
}

TEST_CASE("wp command: meu first, stephen fallback") {
    CommandOptions opts;
    Json eq = cmd_wp(data_path("uml_copy1.pres"), parse_word("z1 x1 x1 y1 x1 x1 y1 z1"), Word{},
                     opts);
    CHECK(eq["answer"] == "equal");
    CHECK(eq["engine"] == "meu");

    Json neq = cmd_wp(data_path("bicyclic.pres"), parse_word("a' a"), Word{}, opts);
    CHECK(neq["answer"] == "false");
    CHECK(neq["engine"] == "meu");

    // A presentation fitting no pipeline falls back to the semidecision.
    std::string tmp = "/tmp/invmon_nopipe.pres";
    {
        std::ofstream os(tmp);
        os << "inverse_monoid\ngenerators: a b\nrelator: ( a b ) ( b a )\noracle: kb 400\n";
    }
    Json unk = cmd_wp(tmp, parse_word("a"), Word{}, opts);
    CHECK(unk["engine"] == "stephen");
    CHECK(unk["answer"] == "unknown");
    Json eq2 = cmd_wp(tmp, parse_word("a b b a"), Word{}, opts);
    CHECK(eq2["engine"] == "stephen");
    CHECK(eq2["answer"] == "equal");
}

TEST_CASE("amalgamate command reproduces the displayed presentations") {
    CommandOptions opts;
    opts.out_path = "/tmp/invmon_uml_amalgam_out.pres";
    Json v = cmd_amalgamate(data_path("uml_copy1.pres"), data_path("uml_copy2.pres"),
                            {{parse_word("z1"), parse_word("z2")}}, opts);
    REQUIRE(v["certified"] == true);
    PresentationFile emitted = parse_presentation_file(v["presentation"].get<std::string>());
    REQUIRE(emitted.pres.relators.size() == 3);
    CHECK(emitted.pres.relators[2] == parse_word("z1 z2'"));
    // Round trip through the written file.
    PresentationFile reloaded = load_presentation_file(opts.out_path);
    CHECK(reloaded.pres == emitted.pres);

    Json clash = cmd_amalgamate(data_path("uml_copy1.pres"), data_path("uml_copy1.pres"),
                                {{parse_word("z1"), parse_word("z1")}}, opts);
    CHECK(clash["certified"] == false);

    Json bad = cmd_amalgamate(data_path("uml_copy1.pres"), data_path("uml_copy2.pres"),
                              {{parse_word("x1"), parse_word("z2")}}, opts);
    CHECK(bad["certified"] == false);
}

TEST_CASE("stephen command") {
    CommandOptions opts;
    opts.budget = 2;
    opts.dot_path = "/tmp/invmon_stephen.dot";
    Json v = cmd_stephen(data_path("bicyclic.pres"), parse_word("a a'"), Word{}, opts);
    CHECK(v["answer"] == "equal");
    std::ifstream dot(opts.dot_path);
    CHECK(dot.good());
}

TEST_CASE("group oracle assembly honours declarations") {
    PresentationFile bad = parse_presentation_file(
        "group\ngenerators: a\nrelator: a a\noracle: free\n");
    CHECK_THROWS(build_group_oracle(bad, "."));

    PresentationFile cyc = parse_presentation_file(
        "group\ngenerators: a\nrelator: a a a a a\noracle: cyclic 5\n");
    GroupOracle c = build_group_oracle(cyc, ".");
    CHECK(c.is_identity(parse_word("a a a a a")) == Answer::yes);

    PresentationFile uml = load_presentation_file(data_path("uml_copy1.pres"));
    GroupOracle g = build_group_oracle(uml, directory_of(data_path("uml_copy1.pres")));
    CHECK(g.is_identity(uml.pres.relators[0]) == Answer::yes);
    CHECK(g.is_identity(parse_word("z1")) == Answer::no);
    CHECK(g.has_normal_form());
}
