#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "equitree/rational.hpp"

namespace equitree {

// Simple undirected graph on vertices 0..n-1. Adjacency lists are kept
// sorted ascending and free of duplicates and self-loops.
struct Graph {
    int n = 0;
    long long m = 0;
    std::vector<std::vector<int>> adj;

    int degree(int v) const { return static_cast<int>(adj[v].size()); }
    int max_degree() const;
    bool has_edge(int u, int v) const;
};

// Builds a graph from an edge list. Self-loops are rejected
// (std::invalid_argument names the offending pair), duplicate edges are
// collapsed and counted into *duplicate_warnings when provided.
Graph build_graph(int n, const std::vector<std::pair<int, int>>& edges,
                  std::size_t* duplicate_warnings = nullptr);

enum class OrderKind { degeneracy_peel, degree_descending };

struct VertexOrdering {
    std::vector<int> order;  // a permutation of 0..n-1
    OrderKind kind;
};

// Repeatedly removes a minimum-degree vertex (smallest id on ties) and
// returns the peel sequence together with the degeneracy d = the largest
// degree seen at removal time.
struct DegeneracyResult {
    VertexOrdering ordering;
    int degeneracy = 0;
};
DegeneracyResult degeneracy_ordering(const Graph& g);

// Vertices sorted by decreasing degree, ties by ascending id.
VertexOrdering degree_descending_order(const Graph& g);

// One entry per vertex v_i (1-based position i in the degree-descending
// order) whose degree fails deg < d*(1 + n/i). Checked exactly via
// deg*i < d*(i+n). Requires d >= 2.
struct KnBoundViolation {
    int position;   // i, 1-based
    int vertex;
    int degree;
    Frac bound;     // d*(i+n)/i
};
std::vector<KnBoundViolation> check_kn_bound(const Graph& g, int d);

// Number of edges with one endpoint in a and the other in b, each edge
// counted once. Overlapping sets are allowed; edges inside the overlap
// count once, so edges_between(s, s) equals the number of edges of the
// induced subgraph on s.
long long edges_between(const Graph& g, const std::vector<int>& a,
                        const std::vector<int>& b);

// Induced subgraph on verts (need not be sorted; duplicates rejected).
// local_to_parent[i] is the original id of local vertex i.
struct InducedSubgraph {
    Graph graph;
    std::vector<int> local_to_parent;
};
InducedSubgraph induced_subgraph(const Graph& g, const std::vector<int>& verts);

}  // namespace equitree
