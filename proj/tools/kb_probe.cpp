// Scratch probe: which of the worked-example groups complete under shortlex KB.
#include <chrono>
#include <iostream>

#include "invmon/presentation.hpp"
#include "invmon/rewriting.hpp"

using namespace invmon;

static void probe(const std::string& name, const std::string& gens,
                  const std::vector<std::string>& relators, int budget) {
    Presentation p;
    p.kind = PresentationKind::group;
    p.alphabet = parse_alphabet(gens);
    for (const auto& r : relators) p.relators.push_back(parse_word(r));
    auto t0 = std::chrono::steady_clock::now();
    RewriteSystem rs = knuth_bendix(p, budget);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    std::cout << name << ": " << (rs.complete() ? "COMPLETE" : "incomplete") << " rules="
              << rs.rules().size() << " time=" << ms << "ms\n";
    if (rs.complete()) {
        for (const auto& r : p.relators)
            if (!rs.normal_form(r).empty()) std::cout << "  BUG: relator not trivial!\n";
    }
}

int main() {
    probe("zn (aab)", "a b", {"a a b"}, 2000);
    probe("zn (aba)", "a b", {"a b a"}, 2000);
    probe("klein zwwz", "z w", {"z w w z"}, 2000);
    probe("uml copy zx2yx2yz", "x y z", {"z x x y x x y z"}, 4000);
    probe("uml amalgam", "x1 y1 z1 x2 y2 z2",
          {"z1 x1 x1 y1 x1 x1 y1 z1", "z2 x2 x2 y2 x2 x2 y2 z2", "z1 z2'"}, 8000);
    probe("uml H full", "h1 w1 h2 w2", {"h1 w1 w1 h1", "h2 w2 w2 h2", "h1 h2'"}, 4000);
    probe("da H copy (sttsts)", "s t", {"s t t s t s"}, 4000);
    probe("da H full", "s1 t1 s2 t2", {"s1 t1 t1 s1 t1 s1", "s2 t2 t2 s2 t2 s2", "s1 s2'"}, 8000);
    probe("da copy", "a b c",
          {"a a b b b c c c c c c c c c c a a b b b c c c c c a a b b b"}, 8000);
    probe("da amalgam", "a1 b1 c1 a2 b2 c2",
          {"a1 a1 b1 b1 b1 c1 c1 c1 c1 c1 c1 c1 c1 c1 c1 a1 a1 b1 b1 b1 c1 c1 c1 c1 c1 a1 a1 b1 b1 b1",
           "a2 a2 b2 b2 b2 c2 c2 c2 c2 c2 c2 c2 c2 c2 c2 a2 a2 b2 b2 b2 c2 c2 c2 c2 c2 a2 a2 b2 b2 b2",
           "a1 a1 b1 b1 b1 b2' b2' b2' a2' a2'"},
          12000);
    probe("ohare H copy", "p q r", {"p q r q r r p p q r q r"}, 8000);
    probe("ohare copy", "a b c d", {"a b c d a c d a d a b b c d a c d"}, 8000);
    probe("ohare amalgam", "a1 b1 c1 d1 a2 b2 c2 d2",
          {"a1 b1 c1 d1 a1 c1 d1 a1 d1 a1 b1 b1 c1 d1 a1 c1 d1",
           "a2 b2 c2 d2 a2 c2 d2 a2 d2 a2 b2 b2 c2 d2 a2 c2 d2",
           "a1 b1 b1 c1 d1 d2' a2'"},
          12000);
    probe("trefoil a2=b3", "a b", {"a a b' b' b'"}, 2000);
    return 0;
}
