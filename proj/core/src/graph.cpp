#include "equitree/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace equitree {

int Graph::max_degree() const {
    int d = 0;
    for (const auto& row : adj) d = std::max(d, static_cast<int>(row.size()));
    return d;
}

bool Graph::has_edge(int u, int v) const {
    const auto& row = adj[u];
    return std::binary_search(row.begin(), row.end(), v);
}

Graph build_graph(int n, const std::vector<std::pair<int, int>>& edges,
                  std::size_t* duplicate_warnings) {
    if (n < 0) throw std::invalid_argument("build_graph: negative vertex count");
    Graph g;
    g.n = n;
    g.adj.assign(n, {});
    for (const auto& [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw std::invalid_argument("build_graph: edge (" + std::to_string(u) + "," +
                                        std::to_string(v) + ") out of range for n=" +
                                        std::to_string(n));
        if (u == v)
            throw std::invalid_argument("build_graph: self-loop (" + std::to_string(u) + "," +
                                        std::to_string(v) + ")");
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    std::size_t dups = 0;
    for (auto& row : g.adj) {
        std::sort(row.begin(), row.end());
        auto last = std::unique(row.begin(), row.end());
        dups += static_cast<std::size_t>(row.end() - last);
        row.erase(last, row.end());
        g.m += static_cast<long long>(row.size());
    }
    g.m /= 2;
    if (duplicate_warnings) *duplicate_warnings = dups / 2;
    return g;
}

DegeneracyResult degeneracy_ordering(const Graph& g) {
    const int n = g.n;
    DegeneracyResult res;
    res.ordering.kind = OrderKind::degeneracy_peel;
    res.ordering.order.reserve(n);

    std::vector<int> deg(n);
    std::set<std::pair<int, int>> live;  // (current degree, id)
    for (int v = 0; v < n; ++v) {
        deg[v] = g.degree(v);
        live.emplace(deg[v], v);
    }
    std::vector<char> removed(n, 0);
    while (!live.empty()) {
        auto [d, v] = *live.begin();
        live.erase(live.begin());
        removed[v] = 1;
        res.degeneracy = std::max(res.degeneracy, d);
        res.ordering.order.push_back(v);
        for (int w : g.adj[v]) {
            if (removed[w]) continue;
            live.erase({deg[w], w});
            live.emplace(--deg[w], w);
        }
    }
    return res;
}

VertexOrdering degree_descending_order(const Graph& g) {
    VertexOrdering out;
    out.kind = OrderKind::degree_descending;
    out.order.resize(g.n);
    std::iota(out.order.begin(), out.order.end(), 0);
    std::stable_sort(out.order.begin(), out.order.end(), [&](int a, int b) {
        if (g.degree(a) != g.degree(b)) return g.degree(a) > g.degree(b);
        return a < b;
    });
    return out;
}

std::vector<KnBoundViolation> check_kn_bound(const Graph& g, int d) {
    if (d < 2) throw std::invalid_argument("check_kn_bound: requires d >= 2, got " +
                                           std::to_string(d));
    std::vector<KnBoundViolation> out;
    const long long n = g.n;
    VertexOrdering ord = degree_descending_order(g);
    for (int idx = 0; idx < g.n; ++idx) {
        const int v = ord.order[idx];
        const long long i = idx + 1;
        const long long deg = g.degree(v);
        if (deg * i < static_cast<long long>(d) * (i + n)) continue;
        out.push_back({static_cast<int>(i), v, static_cast<int>(deg),
                       Frac(d * (i + n), i)});
    }
    return out;
}

long long edges_between(const Graph& g, const std::vector<int>& a,
                        const std::vector<int>& b) {
    // flags: bit0 = in a, bit1 = in b
    std::vector<unsigned char> flag(g.n, 0);
    for (int v : a) flag[v] |= 1;
    for (int v : b) flag[v] |= 2;
    long long cnt = 0;
    for (int u = 0; u < g.n; ++u) {
        if (!flag[u]) continue;
        for (int w : g.adj[u]) {
            if (w <= u || !flag[w]) continue;
            // Count edge {u,w} once if one side is in a and the other in b.
            bool ab = (flag[u] & 1) && (flag[w] & 2);
            bool ba = (flag[u] & 2) && (flag[w] & 1);
            if (ab || ba) ++cnt;
        }
    }
    return cnt;
}

InducedSubgraph induced_subgraph(const Graph& g, const std::vector<int>& verts) {
    InducedSubgraph out;
    out.local_to_parent = verts;
    std::vector<int> local(g.n, -1);
    for (std::size_t i = 0; i < verts.size(); ++i) {
        int v = verts[i];
        if (v < 0 || v >= g.n)
            throw std::invalid_argument("induced_subgraph: vertex out of range");
        if (local[v] != -1)
            throw std::invalid_argument("induced_subgraph: duplicate vertex " + std::to_string(v));
        local[v] = static_cast<int>(i);
    }
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        for (int w : g.adj[verts[i]]) {
            if (local[w] > static_cast<int>(i)) edges.emplace_back(static_cast<int>(i), local[w]);
        }
    }
    out.graph = build_graph(static_cast<int>(verts.size()), edges);
    return out;
}

}  // namespace equitree
