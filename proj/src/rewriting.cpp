#include "invmon/rewriting.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace invmon {

namespace {

// Leftmost shortlex-decreasing rewriting over a bucketed rule set.
template <typename Rules, typename Alive, typename Buckets, typename RankFn>
Word rewrite_to_nf(Word cur, const Rules& rules, const Alive& alive, const Buckets& buckets,
                   std::size_t max_lhs, RankFn&& rank) {
    std::size_t i = 0;
    while (i < cur.size()) {
        const auto& bucket = buckets[static_cast<std::size_t>(rank(cur[i]))];
        std::size_t hit = SIZE_MAX;
        for (std::size_t id : bucket) {
            if (!alive[id]) continue;
            const Word& lhs = rules[id].lhs;
            if (i + lhs.size() > cur.size()) continue;
            if (std::equal(lhs.letters.begin() + 1, lhs.letters.end(),
                           cur.letters.begin() + static_cast<std::ptrdiff_t>(i) + 1)) {
                hit = id;
                break;
            }
        }
        if (hit == SIZE_MAX) {
            ++i;
            continue;
        }
        const Word& lhs = rules[hit].lhs;
        const Word& rhs = rules[hit].rhs;
        Word out;
        out.letters.reserve(cur.size() - lhs.size() + rhs.size());
        out.letters.insert(out.letters.end(), cur.letters.begin(),
                           cur.letters.begin() + static_cast<std::ptrdiff_t>(i));
        out.append(rhs);
        out.letters.insert(out.letters.end(),
                           cur.letters.begin() + static_cast<std::ptrdiff_t>(i + lhs.size()),
                           cur.letters.end());
        cur = std::move(out);
        i = i >= max_lhs ? i - max_lhs + 1 : 0;
    }
    return cur;
}

} // namespace

RewriteSystem::RewriteSystem(Alphabet alphabet) : alphabet_(std::move(alphabet)) {
    buckets_.resize(2 * alphabet_.symbols.size());
}

int RewriteSystem::letter_rank(const Letter& l) const {
    int idx = alphabet_.index_of(l.symbol);
    if (idx < 0) throw std::invalid_argument("letter outside rewriting alphabet: " + to_string(l));
    return 2 * idx + (l.sign < 0 ? 1 : 0);
}

int RewriteSystem::compare(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        int ra = letter_rank(a[i]);
        int rb = letter_rank(b[i]);
        if (ra != rb) return ra < rb ? -1 : 1;
    }
    return 0;
}

void RewriteSystem::reindex() {
    buckets_.assign(2 * alphabet_.symbols.size(), {});
    max_lhs_ = 1;
    for (std::size_t id = 0; id < rules_.size(); ++id) {
        max_lhs_ = std::max(max_lhs_, rules_[id].lhs.size());
        buckets_[static_cast<std::size_t>(letter_rank(rules_[id].lhs[0]))].push_back(id);
    }
}

Word RewriteSystem::normal_form(Word w) const {
    struct AllAlive {
        bool operator[](std::size_t) const { return true; }
    };
    return rewrite_to_nf(std::move(w), rules_, AllAlive{}, buckets_, max_lhs_,
                         [this](const Letter& l) { return letter_rank(l); });
}

void RewriteSystem::complete_from(const std::vector<Word>& relators, int max_rules) {
    rules_.clear();

    // Completion working set, separate from the published rules.
    std::vector<Rule> rules;
    std::vector<char> alive;
    std::vector<std::vector<std::size_t>> buckets(2 * alphabet_.symbols.size());
    std::size_t live = 0;
    std::size_t max_lhs = 1;
    auto rank = [this](const Letter& l) { return letter_rank(l); };
    auto nf = [&](Word w) { return rewrite_to_nf(std::move(w), rules, alive, buckets, max_lhs, rank); };
    auto add = [&](Word lhs, Word rhs) {
        std::size_t id = rules.size();
        max_lhs = std::max(max_lhs, lhs.size());
        buckets[static_cast<std::size_t>(letter_rank(lhs[0]))].push_back(id);
        rules.push_back(Rule{std::move(lhs), std::move(rhs)});
        alive.push_back(1);
        ++live;
    };

    struct Eq {
        Word a, b;
    };
    auto cmp = [](const Eq& x, const Eq& y) {
        return x.a.size() + x.b.size() > y.a.size() + y.b.size();
    };
    std::priority_queue<Eq, std::vector<Eq>, decltype(cmp)> pending(cmp);

    for (SymbolId s : alphabet_.symbols) {
        for (int sign : {1, -1}) {
            Word lhs;
            lhs.append(Letter(s, sign));
            lhs.append(Letter(s, -sign));
            add(lhs, Word{});
        }
    }
    for (const Word& r : relators) {
        pending.push(Eq{r, Word{}});
        pending.push(Eq{invert(r), Word{}});
    }

    auto push_overlaps = [&](std::size_t r1, std::size_t r2) {
        const Word& l1 = rules[r1].lhs;
        const Word& l2 = rules[r2].lhs;
        std::size_t maxk = std::min(l1.size(), l2.size());
        for (std::size_t k = 1; k < maxk; ++k) {
            if (!std::equal(l2.letters.begin(), l2.letters.begin() + static_cast<std::ptrdiff_t>(k),
                            l1.letters.end() - static_cast<std::ptrdiff_t>(k)))
                continue;
            Word left = rules[r1].rhs;
            left.letters.insert(left.letters.end(),
                                l2.letters.begin() + static_cast<std::ptrdiff_t>(k),
                                l2.letters.end());
            Word right;
            right.letters.insert(right.letters.end(), l1.letters.begin(),
                                 l1.letters.end() - static_cast<std::ptrdiff_t>(k));
            right.append(rules[r2].rhs);
            pending.push(Eq{std::move(left), std::move(right)});
        }
    };

    long processed = 0;
    const long equation_budget = static_cast<long>(max_rules) * 50;
    bool exceeded = false;

    while (!pending.empty()) {
        if (++processed > equation_budget || live > static_cast<std::size_t>(max_rules)) {
            exceeded = true;
            break;
        }
        Eq eq = pending.top();
        pending.pop();
        Word a = nf(eq.a);
        Word b = nf(eq.b);
        int cr = compare(a, b);
        if (cr == 0) continue;
        if (cr < 0) std::swap(a, b);

        std::size_t new_index = rules.size();
        add(std::move(a), std::move(b));
        const Word& nl = rules[new_index].lhs;

        // Interreduce: requeue any older rule whose lhs the new rule rewrites.
        for (std::size_t r = 0; r < new_index; ++r) {
            if (!alive[r]) continue;
            const Word& ol = rules[r].lhs;
            bool contains = false;
            if (nl.size() <= ol.size()) {
                for (std::size_t i = 0; i + nl.size() <= ol.size() && !contains; ++i)
                    contains = std::equal(nl.letters.begin(), nl.letters.end(),
                                          ol.letters.begin() + static_cast<std::ptrdiff_t>(i));
            }
            if (contains) {
                alive[r] = 0;
                --live;
                pending.push(Eq{rules[r].lhs, rules[r].rhs});
            }
        }

        for (std::size_t r = 0; r < rules.size(); ++r) {
            if (!alive[r]) continue;
            push_overlaps(r, new_index);
            if (r != new_index) push_overlaps(new_index, r);
        }
    }

    complete_ = !exceeded && pending.empty();

    for (std::size_t r = 0; r < rules.size(); ++r)
        if (alive[r]) rules_.push_back(rules[r]);
    reindex();
    for (Rule& r : rules_) r.rhs = normal_form(r.rhs);
}

RewriteSystem knuth_bendix(const Presentation& p, int max_rules) {
    RewriteSystem rs(p.alphabet);
    rs.complete_from(p.relators, max_rules);
    return rs;
}

} // namespace invmon
