#include <doctest.h>

#include <set>
#include "invmon/structure.hpp"
#include "test_util.hpp"

using namespace invmon;

namespace {
PresentationFile parse(const std::string& text) { return parse_presentation_file(text); }
} // namespace

TEST_CASE("uml decomposition of the paired copy") {
    PresentationFile f = parse(
        "inverse_monoid\ngenerators: x y z\nrelator: ( z ) ( x x y ) ( x x y ) ( z )\n");
    auto m = detect_uniquely_marked(*f.fact);
    REQUIRE(m.has_value());
    UmlDecomposition dec = uml_decompose(f.pres, *f.fact, *m);

    REQUIRE(dec.h.relators.size() == 1);
    REQUIRE(dec.h.alphabet.symbols.size() == 2);
    // Pattern relator: bridge(z) bridge(xxy) bridge(xxy) bridge(z).
    const Word& hr = dec.h.relators[0];
    REQUIRE(hr.size() == 4);
    CHECK(hr[0].symbol == dec.bridges[0]);
    CHECK(hr[1].symbol == dec.bridges[1]);
    CHECK(hr[3].symbol == dec.bridges[0]);
    CHECK(dec.free_part.symbols == std::vector<SymbolId>{intern_symbol("x")});

    // forward: y -> x^-2 bridge; backward: bridge -> x x y.
    Word fy = dec.forward.at(intern_symbol("y"));
    CHECK(reduce(fy) ==
          reduce(parse_word("x' x'") * Word({Letter(dec.bridges[1], 1)})));

    // Round trip: substituting backward into H's relators reproduces the
    // original relators up to free reduction.
    for (std::size_t i = 0; i < dec.h.relators.size(); ++i)
        CHECK(dec.untranslate(dec.h.relators[i]) == reduce(f.pres.relators[i]));
    // Forward then backward is identity on reduced words over X.
    testutil::Rng rng(61);
    for (int i = 0; i < 100; ++i) {
        Word w = testutil::random_word(rng, f.pres.alphabet, 8, true);
        CHECK(dec.untranslate(dec.translate(w)) == reduce(w));
    }
}

TEST_CASE("uml decomposition of a single-relator marked factorisation") {
    PresentationFile f = parse(
        "inverse_monoid\ngenerators: a x b y\nrelator: ( a x b ) ( a y b ) ( a x b )'\n");
    auto m = detect_uniquely_marked(*f.fact);
    REQUIRE(m.has_value());
    UmlDecomposition dec = uml_decompose(f.pres, *f.fact, *m);
    REQUIRE(dec.h.relators.size() == 1);
    const Word& hr = dec.h.relators[0];
    REQUIRE(hr.size() == 3);
    CHECK(hr[2].sign == -1);
    CHECK(dec.free_part.symbols.size() == 2); // a and b survive
}

TEST_CASE("marker equal to the whole factor") {
    PresentationFile f = parse("inverse_monoid\ngenerators: z\nrelator: ( z ) ( z )\n");
    auto m = detect_uniquely_marked(*f.fact);
    REQUIRE(m.has_value());
    UmlDecomposition dec = uml_decompose(f.pres, *f.fact, *m);
    CHECK(dec.backward.at(dec.bridges[0]) == parse_word("z"));
    CHECK(dec.splits[0].before.empty());
    CHECK(dec.splits[0].after.empty());
}

TEST_CASE("da chain on the disjoint example") {
    PresentationFile f = parse(
        "inverse_monoid\ngenerators: a b c\n"
        "relator: ( a a b b b ) ( c c c c c ) ( c c c c c ) ( a a b b b ) ( c c c c c ) ( a a b "
        "b b )\n");
    DaChain chain = da_chain(f.pres, *f.fact);
    REQUIRE(chain.levels.size() == 2);
    CHECK(chain.x0.symbols.empty());
    CHECK(chain.levels[0].order == 0);
    CHECK(chain.levels[0].factor.relators.empty()); // free factor group
    CHECK(chain.levels[1].u == parse_word("c c c c c"));
    REQUIRE(chain.h.relators.size() == 1);
    CHECK(chain.h.relators[0].size() == 6);

    // Telescoping: substituting bridges back gives the original relators.
    for (std::size_t j = 0; j < chain.levels.size(); ++j) {
        const Presentation& gj = chain.levels[j].upper;
        for (std::size_t i = 0; i < gj.relators.size(); ++i) {
            std::map<SymbolId, Word> back;
            for (SymbolId s : gj.alphabet.symbols) back[s] = Word({Letter(s, 1)});
            for (auto& [z, u] : chain.backward) back[z] = u;
            CHECK(substitute(gj.relators[i], back) == f.pres.relators[i]);
        }
    }
}

TEST_CASE("da chain needs order tags for unreduced factors") {
    PresentationFile f =
        parse("inverse_monoid\ngenerators: a b\nrelator: ( a a' a ) ( b )\n");
    CHECK_THROWS_AS(da_chain(f.pres, *f.fact), std::invalid_argument);
    // With a supplied finite order the factor group carries u^m.
    DaChain chain = da_chain(f.pres, *f.fact, {3, 0});
    CHECK(chain.levels[0].order == 3);
    REQUIRE(chain.levels[0].factor.relators.size() == 1);
    CHECK(chain.levels[0].factor.relators[0].size() == 9);
}

TEST_CASE("change of units: identity and single letters") {
    PresentationFile f = parse("inverse_monoid\ngenerators: a b\nrelator: ( a b ) ( b )'\n");
    // U = {ab, b}; V = U: identity rewrite.
    ChangeUnitsResult same = change_units(f.pres, *f.fact, f.fact->factors);
    CHECK(same.pres.relators == f.pres.relators);

    // V = {a, b}: the relator is rewritten over single letters.
    ChangeUnitsResult single =
        change_units(f.pres, *f.fact, {parse_word("a"), parse_word("b")});
    for (std::size_t i = 0; i < single.pres.relators.size(); ++i)
        CHECK(reduce(single.pres.relators[i]) == reduce(f.pres.relators[i]));
    CHECK(validate_factorisation(single.pres, single.fact).ok);

    // A wrong V is rejected with the offending generator.
    CHECK_THROWS_WITH_AS(change_units(f.pres, *f.fact, {parse_word("a")}),
                         doctest::Contains("a b"), std::invalid_argument);
}

TEST_CASE("change of units on the O'Hare factor set") {
    PresentationFile f = load_presentation_file(testutil::data_path("ohare_copy1.pres"));
    std::vector<Word> v{parse_word("a1 b1 a1'"), parse_word("a1 c1 a1'"), parse_word("a1 d1")};
    ChangeUnitsResult out = change_units(f.pres, *f.fact, v);
    REQUIRE(out.pres.relators.size() == 1);
    CHECK(reduce(out.pres.relators[0]) == reduce(f.pres.relators[0]));
    CHECK(out.fact.factors == v);
    auto markers = detect_uniquely_marked(out.fact);
    CHECK(markers.has_value());
}

TEST_CASE("hidden rewrite on the O'Hare copy") {
    PresentationFile f = load_presentation_file(testutil::data_path("ohare_copy1.pres"));
    HiddenUmlResult hr = hidden_uml_rewrite(f.pres, f.factorisation(), f.hidden);
    REQUIRE(hr.pres.relators.size() == 1);
    CHECK(reduce(hr.pres.relators[0]) == reduce(f.pres.relators[0]));
    auto m = detect_uniquely_marked(hr.fact);
    REQUIRE(m.has_value());
    // Markers are b1, c1, d1 for the three substituted factors.
    std::set<std::string> names;
    for (auto [idx, sym] : m->marker) names.insert(symbol_name(sym));
    CHECK(names == std::set<std::string>{"b1", "c1", "d1"});
}

TEST_CASE("hidden rewrite condition failures are numbered") {
    PresentationFile f = load_presentation_file(testutil::data_path("ohare_copy1.pres"));
    Factorisation fact = f.factorisation();

    // Dropping the empty word also breaks the factor-set equality, so the
    // earlier condition fires.
    auto blocks = f.hidden;
    blocks[0].w_set.erase(blocks[0].w_set.begin() + 2);
    try {
        hidden_uml_rewrite(f.pres, fact, blocks);
        CHECK(false);
    } catch (const HiddenUmlError& e) {
        CHECK(e.condition == 2);
    }

    // A factor set without the bare x z word isolates condition 3.
    {
        PresentationFile tiny = parse_presentation_file(
            "inverse_monoid\ngenerators: x w z\nrelator: ( x w z ) ( x w z )\n");
        HiddenBlock b;
        b.x = intern_symbol("x");
        b.z = intern_symbol("z");
        b.ys = {intern_symbol("w")};
        b.w_set = {parse_word("w")};
        b.witnesses.emplace_back(intern_symbol("w"),
                                 std::vector<FactorOccurrence>{{0, 1}});
        try {
            hidden_uml_rewrite(tiny.pres, tiny.factorisation(), {b});
            CHECK(false);
        } catch (const HiddenUmlError& e) {
            CHECK(e.condition == 3);
        }
    }

    auto blocks2 = f.hidden;
    blocks2[0].witnesses.clear();
    try {
        hidden_uml_rewrite(f.pres, fact, blocks2);
        CHECK(false);
    } catch (const HiddenUmlError& e) {
        CHECK(e.condition == 4);
    }

    auto blocks3 = f.hidden;
    blocks3[0].w_set.push_back(parse_word("b1"));
    try {
        hidden_uml_rewrite(f.pres, fact, blocks3);
        CHECK(false);
    } catch (const HiddenUmlError& e) {
        CHECK(e.condition == 2);
    }
}

TEST_CASE("units group presentations") {
    PresentationFile uml = parse(
        "inverse_monoid\ngenerators: x y z\nrelator: ( z ) ( x x y ) ( x x y ) ( z )\n");
    Presentation h = units_group_presentation(uml.pres, *uml.fact);
    REQUIRE(h.relators.size() == 1);
    CHECK(h.relators[0].size() == 4);

    PresentationFile da = parse(
        "inverse_monoid\ngenerators: a b c\n"
        "relator: ( a a b b b ) ( c c c c c ) ( c c c c c ) ( a a b b b ) ( c c c c c ) ( a a b "
        "b b )\n");
    Presentation h2 = units_group_presentation(da.pres, *da.fact);
    CHECK(h2.relators[0].size() == 6);

    PresentationFile flat = parse("inverse_monoid\ngenerators: z\nrelator: ( z )\n");
    Presentation h3 = units_group_presentation(flat.pres, *flat.fact);
    REQUIRE(h3.relators.size() == 1);
    CHECK(h3.relators[0].size() == 1);

    PresentationFile bad = parse("inverse_monoid\ngenerators: a b\nrelator: ( a b ) ( b a )\n");
    CHECK_THROWS_AS(units_group_presentation(bad.pres, *bad.fact), std::invalid_argument);
}

TEST_CASE("fresh bridge symbols avoid user alphabets") {
    Alphabet taken = parse_alphabet("z_a");
    SymbolId s = fresh_symbol("z_a", {taken});
    CHECK(symbol_name(s) == "_z_a");
}
