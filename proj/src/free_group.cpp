#include "invmon/free_group.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

namespace invmon {

namespace {

std::int64_t letter_key(const Letter& l) {
    return (static_cast<std::int64_t>(l.symbol) << 1) | (l.sign < 0 ? 1 : 0);
}

// Folded inverse-closed graph under construction: union-find plus adjacency.
struct Folder {
    std::vector<int> parent;
    std::vector<std::unordered_map<std::int64_t, int>> adj;
    std::deque<std::pair<int, int>> merges;

    int find(int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    }

    int fresh() {
        int v = static_cast<int>(parent.size());
        parent.push_back(v);
        adj.emplace_back();
        return v;
    }

    void connect(int u, const Letter& l, int v) {
        u = find(u);
        v = find(v);
        attach(u, l, v);
        attach(v, l.inverse(), u);
        fold();
    }

    void attach(int u, const Letter& l, int v) {
        auto [it, inserted] = adj[u].try_emplace(letter_key(l), v);
        if (!inserted && find(it->second) != find(v)) merges.emplace_back(it->second, v);
    }

    void fold() {
        while (!merges.empty()) {
            auto [a, b] = merges.front();
            merges.pop_front();
            a = find(a);
            b = find(b);
            if (a == b) continue;
            if (adj[a].size() < adj[b].size()) std::swap(a, b);
            parent[b] = a;
            for (auto& [key, tgt] : adj[b]) {
                auto [it, inserted] = adj[a].try_emplace(key, tgt);
                if (!inserted && find(it->second) != find(tgt)) merges.emplace_back(it->second, tgt);
            }
            adj[b].clear();
        }
    }

    int step(int v, const Letter& l) {
        v = find(v);
        auto it = adj[v].find(letter_key(l));
        return it == adj[v].end() ? -1 : find(it->second);
    }
};

FoldedGraph compact_subgroup_graph(Folder& f, int base, const std::vector<Word>& generators) {
    FoldedGraph g;
    g.mode = FoldedGraph::Mode::subgroup;
    g.generators = generators;
    std::unordered_map<int, int> number;
    std::deque<int> queue;
    base = f.find(base);
    number[base] = 0;
    queue.push_back(base);
    std::vector<int> order{base};
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        std::vector<std::pair<std::int64_t, int>> out(f.adj[v].begin(), f.adj[v].end());
        std::sort(out.begin(), out.end());
        for (auto& [key, tgt] : out) {
            int t = f.find(tgt);
            if (!number.count(t)) {
                number[t] = static_cast<int>(number.size());
                order.push_back(t);
                queue.push_back(t);
            }
        }
    }
    g.base = 0;
    g.vertex_count = static_cast<int>(number.size());
    for (int v : order) {
        for (auto& [key, tgt] : f.adj[v]) {
            Letter l(static_cast<SymbolId>(key >> 1), (key & 1) ? -1 : 1);
            if (l.sign < 0) continue; // store each geometric edge once
            g.edges.push_back(FoldedGraph::Edge{number[v], l, number[f.find(tgt)]});
        }
    }
    std::sort(g.edges.begin(), g.edges.end(), [](const auto& a, const auto& b) {
        return std::tie(a.source, a.label.symbol, a.target) <
               std::tie(b.source, b.label.symbol, b.target);
    });
    return g;
}

// Deterministic step function on the compacted graph.
int graph_step(const FoldedGraph& g, int v, const Letter& l) {
    for (const auto& e : g.edges) {
        if (l.sign > 0 && e.source == v && e.label == l) return e.target;
        if (l.sign < 0 && e.target == v && e.label == l.inverse()) return e.source;
    }
    return -1;
}

} // namespace

Word MembershipWitness::evaluate(const std::vector<Word>& generators) const {
    Word out;
    for (auto [idx, sign] : expression) {
        const Word& g = generators.at(static_cast<std::size_t>(idx));
        if (sign > 0)
            out.append(g);
        else
            out.append(invert(g));
    }
    return out;
}

FoldedGraph stallings_graph(const std::vector<Word>& generators) {
    Folder f;
    int base = f.fresh();
    for (const Word& g0 : generators) {
        Word g = reduce(g0);
        if (g.empty()) continue;
        int cur = base;
        for (std::size_t i = 0; i + 1 < g.size(); ++i) {
            int nxt = f.fresh();
            f.connect(cur, g[i], nxt);
            cur = f.find(nxt);
        }
        f.connect(cur, g.letters.back(), base);
        base = f.find(base);
    }
    return compact_subgroup_graph(f, base, generators);
}

bool subgroup_contains(const FoldedGraph& graph, const Word& w) {
    Word r = reduce(w);
    int v = graph.base;
    for (const Letter& l : r.letters) {
        v = graph_step(graph, v, l);
        if (v < 0) return false;
    }
    return v == graph.base;
}

NielsenBasis nielsen_reduce(const std::vector<Word>& generators) {
    NielsenBasis nb;
    std::vector<Word> g;
    std::vector<std::vector<std::pair<int, int>>> ex;
    for (std::size_t i = 0; i < generators.size(); ++i) {
        g.push_back(reduce(generators[i]));
        ex.push_back({{static_cast<int>(i), 1}});
    }

    auto apply_sign = [](const std::vector<std::pair<int, int>>& e, int sign) {
        if (sign > 0) return e;
        std::vector<std::pair<int, int>> r(e.rbegin(), e.rend());
        for (auto& [i, s] : r) s = -s;
        return r;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (g[i].empty()) {
                g.erase(g.begin() + static_cast<std::ptrdiff_t>(i));
                ex.erase(ex.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        }
        if (changed) continue;
        for (std::size_t i = 0; i < g.size() && !changed; ++i) {
            for (std::size_t j = 0; j < g.size() && !changed; ++j) {
                if (i == j) continue;
                for (int sign : {1, -1}) {
                    Word left = sign > 0 ? g[i] : invert(g[i]);
                    Word cand = reduce(left * g[j]);
                    if (cand.size() < g[j].size()) {
                        g[j] = cand;
                        auto pre = apply_sign(ex[i], sign);
                        pre.insert(pre.end(), ex[j].begin(), ex[j].end());
                        ex[j] = std::move(pre);
                        changed = true;
                        break;
                    }
                    Word cand2 = reduce(g[j] * left);
                    if (cand2.size() < g[j].size()) {
                        g[j] = cand2;
                        auto post = apply_sign(ex[i], sign);
                        ex[j].insert(ex[j].end(), post.begin(), post.end());
                        changed = true;
                        break;
                    }
                }
            }
        }
    }
    nb.basis = std::move(g);
    nb.over_generators = std::move(ex);
    return nb;
}

namespace {

// Greedy peeling over a Nielsen-reduced basis, with a bounded breadth-first
// fallback. Returns the expression over basis indices, or nullopt.
std::optional<std::vector<std::pair<int, int>>> express_over_basis(const std::vector<Word>& basis,
                                                                   const Word& target) {
    std::vector<std::pair<int, int>> out;
    Word cur = reduce(target);
    std::size_t guard = 4 * cur.size() + 16;
    while (!cur.empty() && guard--) {
        bool stepped = false;
        for (std::size_t i = 0; i < basis.size() && !stepped; ++i) {
            for (int sign : {1, -1}) {
                Word left = sign > 0 ? invert(basis[i]) : basis[i];
                Word next = reduce(left * cur);
                if (next.size() < cur.size()) {
                    out.emplace_back(static_cast<int>(i), sign);
                    cur = std::move(next);
                    stepped = true;
                    break;
                }
            }
        }
        if (!stepped) break;
    }
    if (cur.empty()) return out;

    // Fallback: breadth-first over short basis products.
    struct Node {
        Word rem;
        std::vector<std::pair<int, int>> path;
    };
    std::deque<Node> queue{{reduce(target), {}}};
    std::set<Word> seen{reduce(target)};
    std::size_t expansions = 0;
    while (!queue.empty() && expansions < 20000) {
        Node n = queue.front();
        queue.pop_front();
        if (n.rem.empty()) return n.path;
        if (n.path.size() > 2 * target.size() + 8) continue;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            for (int sign : {1, -1}) {
                Word left = sign > 0 ? invert(basis[i]) : basis[i];
                Word next = reduce(left * n.rem);
                if (seen.insert(next).second) {
                    auto path = n.path;
                    path.emplace_back(static_cast<int>(i), sign);
                    queue.push_back({std::move(next), std::move(path)});
                    ++expansions;
                }
            }
        }
    }
    return std::nullopt;
}

} // namespace

std::optional<MembershipWitness> subgroup_witness(const FoldedGraph& graph, const Word& w) {
    if (!subgroup_contains(graph, w)) return std::nullopt;
    NielsenBasis nb = nielsen_reduce(graph.generators);
    auto expr = express_over_basis(nb.basis, w);
    if (!expr) return std::nullopt;
    MembershipWitness witness;
    for (auto [bi, bsign] : *expr) {
        const auto& over = nb.over_generators[static_cast<std::size_t>(bi)];
        if (bsign > 0) {
            witness.expression.insert(witness.expression.end(), over.begin(), over.end());
        } else {
            for (auto it = over.rbegin(); it != over.rend(); ++it)
                witness.expression.emplace_back(it->first, -it->second);
        }
    }
    if (reduce(witness.evaluate(graph.generators)) != reduce(w)) return std::nullopt;
    return witness;
}

FoldedGraph benois_automaton(const std::vector<Word>& generators) {
    FoldedGraph g;
    g.mode = FoldedGraph::Mode::submonoid;
    g.generators = generators;
    g.base = 0;
    g.vertex_count = 1;
    for (const Word& g0 : generators) {
        Word w = reduce(g0);
        if (w.empty()) continue;
        int cur = g.base;
        for (std::size_t i = 0; i < w.size(); ++i) {
            int nxt = (i + 1 == w.size()) ? g.base : g.vertex_count++;
            g.edges.push_back(FoldedGraph::Edge{cur, w[i], nxt});
            cur = nxt;
        }
    }

    // Benois saturation: add eps p->q whenever p -x-> r =eps*=> s -x^-1-> q.
    auto eps_reach = [&](int from, std::vector<char>& mark) {
        mark.assign(static_cast<std::size_t>(g.vertex_count), 0);
        std::deque<int> q{from};
        mark[static_cast<std::size_t>(from)] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (auto& [a, b] : g.epsilons)
                if (a == v && !mark[static_cast<std::size_t>(b)]) {
                    mark[static_cast<std::size_t>(b)] = 1;
                    q.push_back(b);
                }
        }
    };

    std::set<std::pair<int, int>> eps_set;
    bool grew = true;
    std::vector<char> mark;
    while (grew) {
        grew = false;
        for (const auto& e1 : g.edges) {
            eps_reach(e1.target, mark);
            for (const auto& e2 : g.edges) {
                if (e2.label != e1.label.inverse()) continue;
                if (!mark[static_cast<std::size_t>(e2.source)]) continue;
                auto pq = std::make_pair(e1.source, e2.target);
                if (pq.first == pq.second) continue;
                if (eps_set.insert(pq).second) {
                    g.epsilons.push_back(pq);
                    grew = true;
                }
            }
        }
    }
    return g;
}

bool submonoid_contains(const FoldedGraph& automaton, const Word& w) {
    Word r = reduce(w);
    const int n = automaton.vertex_count;
    std::vector<char> states(static_cast<std::size_t>(n), 0);
    auto close = [&](std::vector<char>& s) {
        bool grew = true;
        while (grew) {
            grew = false;
            for (auto& [a, b] : automaton.epsilons)
                if (s[static_cast<std::size_t>(a)] && !s[static_cast<std::size_t>(b)]) {
                    s[static_cast<std::size_t>(b)] = 1;
                    grew = true;
                }
        }
    };
    states[static_cast<std::size_t>(automaton.base)] = 1;
    close(states);
    for (const Letter& l : r.letters) {
        std::vector<char> next(static_cast<std::size_t>(n), 0);
        for (const auto& e : automaton.edges)
            if (e.label == l && states[static_cast<std::size_t>(e.source)])
                next[static_cast<std::size_t>(e.target)] = 1;
        close(next);
        states = std::move(next);
        if (std::none_of(states.begin(), states.end(), [](char c) { return c != 0; })) return false;
    }
    return states[static_cast<std::size_t>(automaton.base)] != 0;
}

FoldedGraph submonoid_units(const FoldedGraph& automaton) {
    // Product of the automaton with its inverse-reversal, then fold into a
    // subgroup graph.
    const int n = automaton.vertex_count;
    auto pack = [n](int p, int q) { return p * n + q; };

    std::vector<std::vector<std::pair<std::int64_t, int>>> letter_out(
        static_cast<std::size_t>(n * n));
    std::vector<std::vector<int>> eps_out(static_cast<std::size_t>(n * n));

    for (const auto& e1 : automaton.edges) {
        for (const auto& e2 : automaton.edges) {
            if (e1.label != e2.label.inverse()) continue;
            // A2 accepts w iff w^-1 in L: A2 edge (e2.target --e1.label--> e2.source).
            letter_out[static_cast<std::size_t>(pack(e1.source, e2.target))].emplace_back(
                letter_key(e1.label), pack(e1.target, e2.source));
        }
    }
    for (auto& [a, b] : automaton.epsilons) {
        for (int q = 0; q < n; ++q) {
            eps_out[static_cast<std::size_t>(pack(a, q))].push_back(pack(b, q));
            eps_out[static_cast<std::size_t>(pack(q, b))].push_back(pack(q, a));
        }
    }

    Folder f;
    std::unordered_map<int, int> vertex_of;
    auto vertex = [&](int state) {
        auto it = vertex_of.find(state);
        if (it != vertex_of.end()) return it->second;
        int v = f.fresh();
        vertex_of.emplace(state, v);
        return v;
    };
    int base_state = pack(automaton.base, automaton.base);
    int base = vertex(base_state);

    std::deque<int> queue{base_state};
    std::set<int> visited{base_state};
    while (!queue.empty()) {
        int s = queue.front();
        queue.pop_front();
        for (auto& [key, t] : letter_out[static_cast<std::size_t>(s)]) {
            Letter l(static_cast<SymbolId>(key >> 1), (key & 1) ? -1 : 1);
            f.connect(vertex(s), l, vertex(t));
            if (visited.insert(t).second) queue.push_back(t);
        }
        for (int t : eps_out[static_cast<std::size_t>(s)]) {
            // Epsilon edges identify product states for the subgroup fold.
            f.merges.emplace_back(vertex(s), vertex(t));
            f.fold();
            if (visited.insert(t).second) queue.push_back(t);
        }
    }

    FoldedGraph g = compact_subgroup_graph(f, base, {});

    // Trim hair: the unit group is spelled by base loops only.
    bool trimmed = true;
    while (trimmed) {
        trimmed = false;
        std::vector<int> degree(static_cast<std::size_t>(g.vertex_count), 0);
        for (const auto& e : g.edges) {
            degree[static_cast<std::size_t>(e.source)]++;
            degree[static_cast<std::size_t>(e.target)]++;
        }
        for (int v = 0; v < g.vertex_count; ++v) {
            if (v == g.base || degree[static_cast<std::size_t>(v)] != 1) continue;
            std::vector<FoldedGraph::Edge> kept;
            for (const auto& e : g.edges)
                if (e.source != v && e.target != v) kept.push_back(e);
            g.edges = std::move(kept);
            trimmed = true;
        }
        if (trimmed) {
            // Renumber reachable part.
            FoldedGraph h;
            h.mode = FoldedGraph::Mode::subgroup;
            h.base = 0;
            std::unordered_map<int, int> num{{g.base, 0}};
            std::deque<int> bfs{g.base};
            while (!bfs.empty()) {
                int v = bfs.front();
                bfs.pop_front();
                for (const auto& e : g.edges) {
                    int other = -1;
                    if (e.source == v) other = e.target;
                    if (e.target == v) other = e.source;
                    if (other >= 0 && !num.count(other)) {
                        num[other] = static_cast<int>(num.size());
                        bfs.push_back(other);
                    }
                }
            }
            for (const auto& e : g.edges)
                if (num.count(e.source) && num.count(e.target))
                    h.edges.push_back({num[e.source], e.label, num[e.target]});
            h.vertex_count = static_cast<int>(num.size());
            g = std::move(h);
        }
    }
    return g;
}

std::string canonical_signature(const FoldedGraph& graph, const Alphabet& order) {
    std::vector<int> number(static_cast<std::size_t>(graph.vertex_count), -1);
    std::vector<int> bfs;
    number[static_cast<std::size_t>(graph.base)] = 0;
    bfs.push_back(graph.base);
    std::ostringstream sig;
    for (std::size_t qi = 0; qi < bfs.size(); ++qi) {
        int v = bfs[qi];
        for (SymbolId s : order.symbols) {
            for (int sign : {1, -1}) {
                Letter l(s, sign);
                int t = graph_step(graph, v, l);
                sig << static_cast<int>(qi) << (sign > 0 ? '+' : '-') << symbol_name(s) << ':';
                if (t < 0) {
                    sig << "_;";
                    continue;
                }
                if (number[static_cast<std::size_t>(t)] < 0) {
                    number[static_cast<std::size_t>(t)] = static_cast<int>(bfs.size());
                    bfs.push_back(t);
                }
                sig << number[static_cast<std::size_t>(t)] << ';';
            }
        }
    }
    return sig.str();
}

std::string FoldedGraph::to_dot() const {
    std::ostringstream out;
    out << "digraph folded {\n  rankdir=LR;\n";
    out << "  " << base << " [shape=doublecircle];\n";
    for (const auto& e : edges)
        out << "  " << e.source << " -> " << e.target << " [label=\"" << to_string(e.label)
            << "\"];\n";
    for (const auto& [a, b] : epsilons)
        out << "  " << a << " -> " << b << " [style=dashed];\n";
    out << "}\n";
    return out.str();
}

} // namespace invmon
