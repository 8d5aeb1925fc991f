#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

namespace ripple {

/// Simple undirected graph with ordered neighbor sets, so membership,
/// removal, and successor queries are all logarithmic.
struct UGraph {
    int n = 0;
    std::vector<std::set<int>> adj;

    explicit UGraph(int vertex_count);
    void add_edge(int u, int v);  // duplicates are ignored, self loops rejected
    bool has_edge(int u, int v) const;
    int degree(int v) const { return static_cast<int>(adj[static_cast<std::size_t>(v)].size()); }
    long long edge_count() const;
};

struct ReductionStep {
    int removed = -1;
    int neighbor_a = -1;
    int neighbor_b = -1;
    bool edge_inserted = false;  // was the bypass edge a-b newly created
};

/// Replaying the steps against the input graph reproduces the final state;
/// operations counts the ordered-set operations the reduction performed.
struct ReductionTrace {
    std::vector<ReductionStep> steps;
    int final_vertices = 0;
    long long operations = 0;
};

struct RecognitionResult {
    bool accepted = false;
    ReductionTrace trace;
};

/// A tree of cycles is a cycle (length >= 3), or the result of repeatedly
/// attaching another such cycle onto an existing edge. Recognition runs the
/// degree-2 contraction queue: remove a degree-2 vertex, bridge its two
/// neighbors unless already adjacent, re-enqueue a neighbor whose degree
/// just dropped to exactly 2, and accept when exactly two vertices survive.
/// Graphs failing the prechecks (at least 3 vertices, connected, minimum
/// degree 2) are rejected without running the reduction.
RecognitionResult is_tree_of_cycles(const UGraph& g);

/// Deterministic per seed: starts from one random cycle, then attaches
/// cycle_count - 1 further cycles (lengths drawn from [len_lo, len_hi]) to
/// uniformly chosen existing edges. The chosen edge stays in the graph as
/// the shared edge.
UGraph generate_tree_of_cycles(std::uint64_t seed, int cycle_count, int len_lo, int len_hi);

}  // namespace ripple
