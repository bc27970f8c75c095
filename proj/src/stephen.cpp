#include "invmon/stephen.hpp"

#include <deque>
#include <memory>
#include <sstream>
#include <unordered_map>
#include <vector>

namespace invmon {

namespace {
std::int64_t letter_key(const Letter& l) {
    return (static_cast<std::int64_t>(l.symbol) << 1) | (l.sign < 0 ? 1 : 0);
}
} // namespace

struct StephenApproximant::Graph {
    std::vector<int> parent;
    std::vector<std::unordered_map<std::int64_t, int>> adj;
    std::deque<std::pair<int, int>> merges;
    int start = 0;
    int end = 0;
    std::size_t live = 0;

    int find(int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    }

    int fresh() {
        int v = static_cast<int>(parent.size());
        parent.push_back(v);
        adj.emplace_back();
        ++live;
        return v;
    }

    void attach(int u, const Letter& l, int v) {
        auto [it, inserted] = adj[u].try_emplace(letter_key(l), v);
        if (!inserted && find(it->second) != find(v)) merges.emplace_back(it->second, v);
    }

    void connect(int u, const Letter& l, int v) {
        u = find(u);
        v = find(v);
        attach(u, l, v);
        attach(v, l.inverse(), u);
        fold();
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
            --live;
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

    // Force the relator to label a loop at v, creating fresh interior
    // vertices for the untraceable middle.
    void sew(int v, const Word& relator) {
        if (relator.empty()) return;
        int cur = find(v);
        v = cur;
        for (std::size_t i = 0; i < relator.size(); ++i) {
            bool last = (i + 1 == relator.size());
            if (last) {
                connect(cur, relator[i], v);
                v = find(v);
                return;
            }
            int nxt = step(cur, relator[i]);
            if (nxt < 0) {
                nxt = fresh();
                connect(cur, relator[i], nxt);
                nxt = find(nxt);
                v = find(v);
            }
            cur = find(nxt);
        }
    }
};

StephenApproximant::StephenApproximant(const Presentation& p, const Word& w, int rounds,
                                       std::size_t vertex_cap) {
    graph_ = std::make_shared<Graph>();
    Graph& g = *graph_;
    g.start = g.fresh();
    int cur = g.start;
    for (const Letter& l : w.letters) {
        int nxt = g.fresh();
        g.connect(cur, l, nxt);
        cur = g.find(nxt);
    }
    g.end = cur;
    g.start = g.find(g.start);

    for (int round = 0; round < rounds; ++round) {
        std::vector<int> snapshot;
        for (int v = 0; v < static_cast<int>(g.parent.size()); ++v)
            if (g.find(v) == v) snapshot.push_back(v);
        for (int v : snapshot) {
            if (g.find(v) != v) continue; // merged away during this round
            for (const Word& r : p.relators) g.sew(v, r);
            if (g.live > vertex_cap) {
                capped_ = true;
                return;
            }
        }
        ++rounds_done_;
    }
}

bool StephenApproximant::reads(const Word& v) const {
    Graph& g = *graph_;
    int cur = g.find(g.start);
    for (const Letter& l : v.letters) {
        cur = g.step(cur, l);
        if (cur < 0) return false;
    }
    return cur == g.find(g.end);
}

std::size_t StephenApproximant::vertex_count() const { return graph_->live; }

std::string StephenApproximant::to_dot() const {
    Graph& g = *graph_;
    std::ostringstream out;
    out << "digraph approximant {\n  rankdir=LR;\n";
    out << "  " << g.find(g.start) << " [shape=doublecircle,label=\"start\"];\n";
    out << "  " << g.find(g.end) << " [shape=doublecircle,label=\"end\"];\n";
    for (int v = 0; v < static_cast<int>(g.parent.size()); ++v) {
        if (g.find(v) != v) continue;
        for (auto& [key, tgt] : g.adj[v]) {
            Letter l(static_cast<SymbolId>(key >> 1), (key & 1) ? -1 : 1);
            if (l.sign < 0) continue;
            out << "  " << v << " -> " << g.find(tgt) << " [label=\"" << to_string(l) << "\"];\n";
        }
    }
    out << "}\n";
    return out.str();
}

SemiDecision stephen_equal(const Presentation& p, const Word& u, const Word& v, int rounds,
                           std::size_t vertex_cap) {
    StephenApproximant au(p, u, rounds, vertex_cap);
    if (!au.reads(v)) return SemiDecision::unknown;
    StephenApproximant av(p, v, rounds, vertex_cap);
    if (!av.reads(u)) return SemiDecision::unknown;
    return SemiDecision::equal;
}

} // namespace invmon
