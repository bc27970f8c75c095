#ifndef INVMON_STEPHEN_HPP
#define INVMON_STEPHEN_HPP

#include <memory>
#include <string>

#include "invmon/presentation.hpp"
#include "invmon/words.hpp"

namespace invmon {

// Iterated sew-and-fold approximant of the Schutzenberger graph of w: start
// from the linear path of w, then alternately attach every relator as a loop
// at every vertex and fold to a deterministic inverse graph. Identifications
// are consequences of the relations, so anything readable in an approximant
// is readable in the full graph.
class StephenApproximant {
public:
    StephenApproximant(const Presentation& p, const Word& w, int rounds,
                       std::size_t vertex_cap = 250000);

    // Does `v` label a start-to-end path?
    bool reads(const Word& v) const;

    int rounds_done() const { return rounds_done_; }
    bool capped() const { return capped_; }
    std::size_t vertex_count() const;

    std::string to_dot() const;

private:
    friend struct StephenImpl;
    struct Graph;
    std::shared_ptr<Graph> graph_;
    int rounds_done_ = 0;
    bool capped_ = false;
};

enum class SemiDecision { equal, unknown };

inline const char* to_string(SemiDecision d) {
    return d == SemiDecision::equal ? "equal" : "unknown";
}

// Sound semi-decision for u = v in the inverse monoid: `equal` iff each word
// labels a start-to-end path in the other's approximant. Never answers
// "unequal".
SemiDecision stephen_equal(const Presentation& p, const Word& u, const Word& v, int rounds,
                           std::size_t vertex_cap = 250000);

} // namespace invmon

#endif
