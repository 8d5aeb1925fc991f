#include "ripple/graph_recognition.hpp"

#include <queue>
#include <utility>

#include "ripple/rng.hpp"

namespace ripple {

UGraph::UGraph(int vertex_count) : n(vertex_count) {
    if (vertex_count < 0) throw std::invalid_argument("vertex count must be nonnegative");
    adj.resize(static_cast<std::size_t>(n));
}

void UGraph::add_edge(int u, int v) {
    if (u < 0 || u >= n || v < 0 || v >= n) throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self loops are not allowed");
    adj[static_cast<std::size_t>(u)].insert(v);
    adj[static_cast<std::size_t>(v)].insert(u);
}

bool UGraph::has_edge(int u, int v) const {
    if (u < 0 || u >= n || v < 0 || v >= n) return false;
    return adj[static_cast<std::size_t>(u)].count(v) > 0;
}

long long UGraph::edge_count() const {
    long long twice = 0;
    for (const auto& s : adj) twice += static_cast<long long>(s.size());
    return twice / 2;
}

namespace {

bool connected(const UGraph& g) {
    if (g.n == 0) return true;
    std::vector<char> seen(static_cast<std::size_t>(g.n), 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!q.empty()) {
        const int v = q.front();
        q.pop();
        for (int w : g.adj[static_cast<std::size_t>(v)])
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                ++reached;
                q.push(w);
            }
    }
    return reached == g.n;
}

}  // namespace

RecognitionResult is_tree_of_cycles(const UGraph& g) {
    RecognitionResult out;
    out.trace.final_vertices = g.n;
    // Every tree of cycles has at least 3 vertices, is connected, and has
    // minimum degree 2; rejecting early also stops the contraction from
    // swallowing paths and trees.
    if (g.n < 3) return out;
    for (int v = 0; v < g.n; ++v)
        if (g.degree(v) < 2) return out;
    if (!connected(g)) return out;

    std::vector<std::set<int>> adj = g.adj;
    std::vector<char> alive(static_cast<std::size_t>(g.n), 1);
    int live = g.n;
    long long& ops = out.trace.operations;

    std::queue<int> q;
    for (int v = 0; v < g.n; ++v) {
        ++ops;
        if (adj[static_cast<std::size_t>(v)].size() == 2) q.push(v);
    }

    while (!q.empty()) {
        const int i = q.front();
        q.pop();
        ++ops;
        if (!alive[static_cast<std::size_t>(i)] || adj[static_cast<std::size_t>(i)].size() != 2) continue;
        const auto it = adj[static_cast<std::size_t>(i)].begin();
        const int j = *it;
        const int k = *std::next(it);
        const std::size_t deg_j_before = adj[static_cast<std::size_t>(j)].size();
        const std::size_t deg_k_before = adj[static_cast<std::size_t>(k)].size();

        adj[static_cast<std::size_t>(j)].erase(i);
        adj[static_cast<std::size_t>(k)].erase(i);
        adj[static_cast<std::size_t>(i)].clear();
        alive[static_cast<std::size_t>(i)] = 0;
        --live;
        ops += 3;

        bool inserted = false;
        ++ops;
        if (adj[static_cast<std::size_t>(j)].count(k) == 0) {
            adj[static_cast<std::size_t>(j)].insert(k);
            adj[static_cast<std::size_t>(k)].insert(j);
            inserted = true;
            ops += 2;
        }
        out.trace.steps.push_back(ReductionStep{i, j, k, inserted});

        if (deg_j_before > 2 && adj[static_cast<std::size_t>(j)].size() == 2) q.push(j);
        if (deg_k_before > 2 && adj[static_cast<std::size_t>(k)].size() == 2) q.push(k);
    }

    out.trace.final_vertices = live;
    out.accepted = live == 2;
    return out;
}

UGraph generate_tree_of_cycles(std::uint64_t seed, int cycle_count, int len_lo, int len_hi) {
    if (cycle_count < 1) throw std::invalid_argument("need at least one cycle");
    if (len_lo < 3 || len_hi < len_lo) throw std::invalid_argument("cycle lengths must satisfy 3 <= lo <= hi");

    SplitMix64 rng(seed);
    std::vector<std::pair<int, int>> edges;
    int n = static_cast<int>(rng.next_int(len_lo, len_hi));
    for (int v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);

    for (int c = 1; c < cycle_count; ++c) {
        const int len = static_cast<int>(rng.next_int(len_lo, len_hi));
        const auto [u, v] = edges[static_cast<std::size_t>(rng.next_below(edges.size()))];
        // The new cycle shares the picked edge: its remaining len - 2
        // vertices form a fresh path between u and v.
        int prev = u;
        for (int w = 0; w < len - 2; ++w) {
            edges.emplace_back(prev, n);
            prev = n;
            ++n;
        }
        edges.emplace_back(prev, v);
    }

    UGraph g(n);
    for (auto [a, b] : edges) g.add_edge(a, b);
    return g;
}

}  // namespace ripple
