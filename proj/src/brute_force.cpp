#include "invmon/brute_force.hpp"

#include <algorithm>
#include <deque>
#include <queue>
#include <numeric>

namespace invmon {

namespace {

std::string pack_vec(const std::vector<long long>& v) {
    return std::string(reinterpret_cast<const char*>(v.data()), v.size() * sizeof(long long));
}

} // namespace

SubmonoidBruteForce::SubmonoidBruteForce(std::vector<Word> generators, GroupOracle ambient,
                                         EnumerationBudget budget,
                                         std::vector<Word> ambient_relators)
    : generators_(std::move(generators)), ambient_(std::move(ambient)), budget_(budget) {
    if (ambient_relators.empty()) return;
    filter_enabled_ = true;
    for (SymbolId s : ambient_.alphabet.symbols) dims_.push_back(s);

    // Row-echelon basis of the relator image lattice, by gcd elimination.
    std::vector<AbVec> rows;
    for (const Word& r : ambient_relators) rows.push_back(abelian_of(r));
    std::size_t pivot_col = 0;
    while (pivot_col < dims_.size() && !rows.empty()) {
        std::size_t best = rows.size();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i][pivot_col] == 0) continue;
            if (best == rows.size() ||
                std::llabs(rows[i][pivot_col]) < std::llabs(rows[best][pivot_col]))
                best = i;
        }
        if (best == rows.size()) {
            ++pivot_col;
            continue;
        }
        bool again = false;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == best || rows[i][pivot_col] == 0) continue;
            long long q = rows[i][pivot_col] / rows[best][pivot_col];
            for (std::size_t c = 0; c < dims_.size(); ++c) rows[i][c] -= q * rows[best][c];
            if (rows[i][pivot_col] != 0) again = true;
        }
        if (again) continue;
        lattice_.push_back(rows[best]);
        rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(best));
        rows.erase(std::remove_if(rows.begin(), rows.end(),
                                  [](const AbVec& v) {
                                      return std::all_of(v.begin(), v.end(),
                                                         [](long long x) { return x == 0; });
                                  }),
                   rows.end());
        ++pivot_col;
    }
    for (const Word& g : generators_) gen_ab_.push_back(abelian_of(g));
}

SubmonoidBruteForce::AbVec SubmonoidBruteForce::abelian_of(const Word& w) const {
    AbVec v(dims_.size(), 0);
    for (const Letter& l : w.letters) {
        for (std::size_t i = 0; i < dims_.size(); ++i) {
            if (dims_[i] == l.symbol) {
                v[i] += l.sign;
                break;
            }
        }
    }
    return v;
}

SubmonoidBruteForce::AbVec SubmonoidBruteForce::lattice_reduce(AbVec v) const {
    for (const AbVec& row : lattice_) {
        std::size_t pivot = 0;
        while (pivot < row.size() && row[pivot] == 0) ++pivot;
        if (pivot == row.size()) continue;
        long long q = v[pivot] / row[pivot];
        if ((v[pivot] % row[pivot] != 0) && ((v[pivot] < 0) != (row[pivot] < 0))) --q;
        if (q == 0) continue;
        for (std::size_t c = 0; c < row.size(); ++c) v[c] -= q * row[c];
    }
    return v;
}

// Least number of generators reaching each abelian class, up to the product
// budget. Exact: the abelianization of a product is the sum of the images.
void SubmonoidBruteForce::build_abelian_balls() {
    if (filter_ready_ || !filter_enabled_) return;
    filter_ready_ = true;
    ab_depth_.emplace(pack_vec(lattice_reduce(AbVec(dims_.size(), 0))), 0);
    std::vector<AbVec> frontier{AbVec(dims_.size(), 0)};
    for (int depth = 1; depth <= budget_.max_product_length; ++depth) {
        std::vector<AbVec> next;
        for (const AbVec& v : frontier) {
            for (const AbVec& g : gen_ab_) {
                AbVec w = v;
                for (std::size_t c = 0; c < w.size(); ++c) w[c] += g[c];
                std::string key = pack_vec(lattice_reduce(w));
                if (ab_depth_.emplace(std::move(key), depth).second) {
                    next.push_back(std::move(w));
                    if (ab_depth_.size() > 4000000) {
                        filter_failed_ = true;
                        return;
                    }
                }
            }
        }
        frontier = std::move(next);
    }
}

SubmonoidBruteForce::Result SubmonoidBruteForce::membership(const Word& w) {
    Word target = reduce(w);
    build_abelian_balls();
    const bool filtering = filter_enabled_ && !filter_failed_;

    // Least remaining product length by the abelian gap; admissible, so the
    // best-first search below finds shortest witnesses and an exhausted queue
    // certifies not-found over every product within the budget.
    AbVec wab;
    auto heuristic = [&](const AbVec& at) -> int {
        if (!filtering) return 0;
        AbVec gap = wab;
        for (std::size_t c = 0; c < gap.size(); ++c) gap[c] -= at[c];
        auto it = ab_depth_.find(pack_vec(lattice_reduce(std::move(gap))));
        if (it == ab_depth_.end()) return budget_.max_product_length + 1;
        return it->second;
    };
    if (filtering) {
        wab = abelian_of(target);
        if (heuristic(AbVec(dims_.size(), 0)) > budget_.max_product_length)
            return Result{"not-found", {}};
    }

    struct Node {
        int depth;
        int parent;
        int generator;
    };
    std::unordered_map<Word, int, WordHash> best; // free word -> shallowest depth
    std::vector<Word> keys;
    std::vector<Node> nodes;
    std::vector<AbVec> node_ab;

    auto path_of = [&](int idx) {
        std::vector<int> path;
        while (idx >= 0 && nodes[static_cast<std::size_t>(idx)].generator >= 0) {
            path.push_back(nodes[static_cast<std::size_t>(idx)].generator);
            idx = nodes[static_cast<std::size_t>(idx)].parent;
        }
        std::reverse(path.begin(), path.end());
        return path;
    };

    bool saw_inconclusive = false;
    auto matches = [&](const Word& candidate, const AbVec& cab) {
        if (filtering) {
            AbVec diff = cab;
            for (std::size_t c = 0; c < diff.size(); ++c) diff[c] -= wab[c];
            if (lattice_reduce(std::move(diff)) != AbVec(dims_.size(), 0)) return false;
        }
        Answer a = ambient_.is_identity(reduce(candidate * invert(target)));
        if (a == Answer::inconclusive) saw_inconclusive = true;
        return a == Answer::yes;
    };

    using QEntry = std::pair<int, int>; // (depth + heuristic, node index)
    std::priority_queue<QEntry, std::vector<QEntry>, std::greater<QEntry>> queue;

    best.emplace(Word{}, 0);
    keys.push_back(Word{});
    nodes.push_back({0, -1, -1});
    node_ab.push_back(AbVec(dims_.size(), 0));
    if (matches(Word{}, node_ab[0])) return Result{"member", {}};
    queue.emplace(heuristic(node_ab[0]), 0);

    while (!queue.empty()) {
        auto [f, idx] = queue.top();
        queue.pop();
        if (f > budget_.max_product_length) break;
        const int depth = nodes[static_cast<std::size_t>(idx)].depth;
        {
            auto it = best.find(keys[static_cast<std::size_t>(idx)]);
            if (it != best.end() && it->second < depth) continue; // stale entry
        }
        for (std::size_t gi = 0; gi < generators_.size(); ++gi) {
            AbVec child_ab = node_ab[static_cast<std::size_t>(idx)];
            for (std::size_t c = 0; c < child_ab.size(); ++c) child_ab[c] += gen_ab_[gi][c];
            int h = heuristic(child_ab);
            if (depth + 1 + h > budget_.max_product_length) continue;
            Word prod = reduce(keys[static_cast<std::size_t>(idx)] * generators_[gi]);
            auto [it, inserted] = best.try_emplace(prod, depth + 1);
            if (!inserted) {
                if (it->second <= depth + 1) continue;
                it->second = depth + 1;
            }
            ++explored_;
            nodes.push_back({depth + 1, idx, static_cast<int>(gi)});
            int child_index = static_cast<int>(nodes.size()) - 1;
            if (matches(prod, child_ab)) return Result{"member", path_of(child_index)};
            keys.push_back(std::move(prod));
            node_ab.push_back(std::move(child_ab));
            if (nodes.size() > budget_.node_cap) return Result{"capped", {}};
            queue.emplace(depth + 1 + h, child_index);
        }
    }
    return Result{saw_inconclusive ? "capped" : "not-found", {}};
}

std::vector<Word> free_submonoid_ball(const std::vector<Word>& generators, int max_length) {
    std::vector<Word> out{Word{}};
    std::unordered_map<Word, char, WordHash> seen;
    seen.emplace(Word{}, 1);
    std::size_t frontier_begin = 0;
    for (int depth = 1; depth <= max_length; ++depth) {
        std::size_t frontier_end = out.size();
        for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
            for (const Word& g : generators) {
                Word next = reduce(out[i] * g);
                if (seen.emplace(next, 1).second) out.push_back(next);
            }
        }
        frontier_begin = frontier_end;
    }
    return out;
}

std::optional<std::vector<Word>> free_submonoid_saturate(const std::vector<Word>& generators,
                                                         std::size_t max_word_len,
                                                         std::size_t node_budget) {
    std::vector<Word> out{Word{}};
    std::unordered_map<Word, char, WordHash> seen;
    seen.emplace(Word{}, 1);
    std::deque<Word> frontier{Word{}};
    while (!frontier.empty()) {
        Word p = std::move(frontier.front());
        frontier.pop_front();
        for (const Word& g : generators) {
            Word q = reduce(p * g);
            if (q.size() > max_word_len) continue;
            if (!seen.emplace(q, 1).second) continue;
            if (seen.size() > node_budget) return std::nullopt;
            out.push_back(q);
            frontier.push_back(std::move(q));
        }
    }
    return out;
}

FreeSearchResult free_submonoid_search(const std::vector<Word>& generators, const Word& w,
                                       int max_length, std::size_t node_cap,
                                       std::size_t max_word_len) {
    Word target = reduce(w);
    std::vector<Word> frontier{Word{}};
    std::unordered_map<Word, char, WordHash> seen;
    seen.emplace(Word{}, 1);
    if (target.empty()) return {"member", 0};
    for (int depth = 1; depth <= max_length; ++depth) {
        std::vector<Word> next;
        for (const Word& p : frontier) {
            for (const Word& g : generators) {
                Word q = reduce(p * g);
                if (q.size() > max_word_len) continue;
                if (!seen.emplace(q, 1).second) continue;
                if (q == target) return {"member", depth};
                if (seen.size() > node_cap) return {"capped", depth};
                next.push_back(std::move(q));
            }
        }
        frontier = std::move(next);
    }
    return {"not-found", max_length};
}

ComparisonReport compare_engines(const std::function<Answer(const Word&)>& engine,
                                 SubmonoidBruteForce& reference, const std::vector<Word>& queries,
                                 std::uint64_t seed) {
    ComparisonReport report;
    report.seed = seed;
    for (const Word& q : queries) {
        ComparisonRow row;
        row.query = q;
        Answer a = engine(q);
        row.engine = a == Answer::yes ? "true" : a == Answer::no ? "false" : "inconclusive";
        auto r = reference.membership(q);
        row.reference = r.status;
        row.flagged = (a == Answer::no && r.status == "member") ||
                      (a == Answer::yes && r.status == "not-found") ||
                      (a == Answer::inconclusive &&
                       (r.status == "member" || r.status == "not-found"));
        if (row.flagged) ++report.disagreements;
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace invmon
