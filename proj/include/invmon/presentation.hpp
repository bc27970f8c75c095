#ifndef INVMON_PRESENTATION_HPP
#define INVMON_PRESENTATION_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "invmon/words.hpp"

namespace invmon {

enum class PresentationKind { group, inverse_monoid };

// alphabet + relators, each relation being relator = 1. Relators need not be
// reduced or cyclically reduced.
struct Presentation {
    PresentationKind kind = PresentationKind::group;
    Alphabet alphabet;
    std::vector<Word> relators;

    void validate() const;

    friend bool operator==(const Presentation& a, const Presentation& b) {
        return a.kind == b.kind && a.alphabet == b.alphabet && a.relators == b.relators;
    }
};

struct FactorOccurrence {
    int factor = 0;
    int sign = 1;

    friend bool operator==(const FactorOccurrence& a, const FactorOccurrence& b) {
        return a.factor == b.factor && a.sign == b.sign;
    }
};

// Factor words plus, per relator, the exact signed occurrence sequence whose
// concatenation spells the relator verbatim.
struct Factorisation {
    std::vector<Word> factors;
    std::vector<std::vector<FactorOccurrence>> occurrences; // one list per relator

    Word expand(std::size_t relator_index) const;

    friend bool operator==(const Factorisation& a, const Factorisation& b) {
        return a.factors == b.factors && a.occurrences == b.occurrences;
    }
};

// Each relator becomes its own single factor (deduplicated by word equality).
Factorisation trivial_factorisation(const Presentation& p);

struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(const std::string& msg, int line_, int column_)
        : std::runtime_error(msg + " (line " + std::to_string(line_) + ", column " +
                             std::to_string(column_) + ")"),
          line(line_),
          column(column_) {}
};

// How the file says the word problem of its maximal group image is decided.
struct OracleSpec {
    enum class Kind { unspecified, free_group, cyclic, knuth_bendix, amalgam };
    Kind kind = Kind::unspecified;
    int modulus = 0;            // cyclic
    int budget = 20000;         // knuth_bendix completion budget (rule limit)
    std::string left_ref;       // amalgam factor files, relative to this file
    std::string right_ref;

    friend bool operator==(const OracleSpec& a, const OracleSpec& b) {
        return a.kind == b.kind && a.modulus == b.modulus && a.budget == b.budget &&
               a.left_ref == b.left_ref && a.right_ref == b.right_ref;
    }
};

// One block of hidden-marker data: X_j = {x, z} ∪ Y, a word set W over Y, and
// for each y a witness spelled over W (occurrence list into w_set) whose free
// reduction must equal y.
struct HiddenBlock {
    SymbolId x = 0;
    SymbolId z = 0;
    std::vector<SymbolId> ys;
    std::vector<Word> w_set;
    std::vector<std::pair<SymbolId, std::vector<FactorOccurrence>>> witnesses;

    friend bool operator==(const HiddenBlock& a, const HiddenBlock& b) {
        return a.x == b.x && a.z == b.z && a.ys == b.ys && a.w_set == b.w_set &&
               a.witnesses == b.witnesses;
    }
};

struct PresentationFile {
    Presentation pres;
    std::optional<Factorisation> fact; // from parentheses, if any relator used them
    OracleSpec oracle;
    bool unital_asserted = false;
    std::vector<HiddenBlock> hidden;
    std::vector<std::pair<Word, Word>> amalgam_pairs; // u (left alphabet) = v (right)
    std::vector<std::pair<int, int>> factor_orders;   // (factor index, order m); 0 = infinite

    // Factorisation to analyse: the declared one, else the trivial one.
    Factorisation factorisation() const;

    friend bool operator==(const PresentationFile& a, const PresentationFile& b) {
        return a.pres == b.pres && a.fact == b.fact && a.oracle == b.oracle &&
               a.unital_asserted == b.unital_asserted && a.hidden == b.hidden &&
               a.amalgam_pairs == b.amalgam_pairs && a.factor_orders == b.factor_orders;
    }
};

PresentationFile parse_presentation_file(const std::string& text);
PresentationFile load_presentation_file(const std::string& path);
std::string print_presentation_file(const PresentationFile& f);

} // namespace invmon

#endif
