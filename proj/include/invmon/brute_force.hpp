#ifndef INVMON_BRUTE_FORCE_HPP
#define INVMON_BRUTE_FORCE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "invmon/oracles.hpp"
#include "invmon/words.hpp"

namespace invmon {

struct EnumerationBudget {
    int max_product_length = 10;
    int max_word_length = 8;
    int sample_count = 50;
    std::uint64_t seed = 1;
    std::size_t node_cap = 4000000;
};

// Bounded reference oracle for submonoid membership. Products of at most
// max_product_length generators are searched breadth-first with canonical
// deduplication through the ambient oracle's normal forms, pruned by an exact
// abelianization reachability test against the query (sound: pruned branches
// provably cannot reach the target within the remaining budget). `member`
// answers carry a witness; `not-found` answers are exhaustive at the budget;
// `capped` reports an aborted search.
class SubmonoidBruteForce {
public:
    SubmonoidBruteForce(std::vector<Word> generators, GroupOracle ambient,
                        EnumerationBudget budget, std::vector<Word> ambient_relators = {});

    struct Result {
        std::string status; // "member" | "not-found" | "no-normal-form" | "capped"
        std::vector<int> witness; // generator indices, when member
    };
    Result membership(const Word& w);

    const EnumerationBudget& budget() const { return budget_; }
    std::size_t explored_nodes() const { return explored_; }

private:
    using AbVec = std::vector<long long>;
    AbVec abelian_of(const Word& w) const;
    AbVec lattice_reduce(AbVec v) const;
    void build_abelian_balls();

    std::vector<Word> generators_;
    GroupOracle ambient_;
    EnumerationBudget budget_;
    std::size_t explored_ = 0;

    bool filter_enabled_ = false;
    bool filter_ready_ = false;
    bool filter_failed_ = false;
    std::vector<SymbolId> dims_;
    std::vector<AbVec> lattice_;
    std::vector<AbVec> gen_ab_;
    // reduced abelian image -> least product length reaching it
    std::unordered_map<std::string, int> ab_depth_;
};

// Exhaustive reference for free groups: reduced forms of all products of at
// most max_length generators.
std::vector<Word> free_submonoid_ball(const std::vector<Word>& generators, int max_length);

// Saturation of the submonoid inside the set of reduced words of bounded
// length: the full set when expansion reaches a fixpoint within the budget.
std::optional<std::vector<Word>> free_submonoid_saturate(const std::vector<Word>& generators,
                                                         std::size_t max_word_len,
                                                         std::size_t node_budget);

struct FreeSearchResult {
    std::string status; // "member" | "not-found" | "capped"
    int product_length = 0;
};
FreeSearchResult free_submonoid_search(const std::vector<Word>& generators, const Word& w,
                                       int max_length, std::size_t node_cap = 2000000,
                                       std::size_t max_word_len = 64);

// One engine-vs-reference comparison row.
struct ComparisonRow {
    Word query;
    std::string engine;     // "true" | "false" | "inconclusive"
    std::string reference;  // brute-force status
    bool flagged = false;
};

struct ComparisonReport {
    std::vector<ComparisonRow> rows;
    std::uint64_t seed = 0;
    int disagreements = 0;
};

// Flags: engine false with a reference witness; engine true against an
// exhaustive not-found; engine inconclusive against any decided reference.
ComparisonReport compare_engines(const std::function<Answer(const Word&)>& engine,
                                 SubmonoidBruteForce& reference, const std::vector<Word>& queries,
                                 std::uint64_t seed);

} // namespace invmon

#endif
