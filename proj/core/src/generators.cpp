#include "equitree/generators.hpp"

#include <stdexcept>
#include <vector>

namespace equitree {

Graph random_d_degenerate(int n, int d, Attachment attach, std::uint64_t seed) {
    if (d < 1) throw std::invalid_argument("random_d_degenerate: d must be >= 1");
    if (n < d + 1)
        throw std::invalid_argument("random_d_degenerate: need n >= d+1 (clique seed)");
    SplitMix64 rng(seed);
    std::vector<std::pair<int, int>> edges;
    std::vector<int> deg(n, 0);
    for (int u = 0; u < d + 1; ++u)
        for (int v = u + 1; v < d + 1; ++v) {
            edges.emplace_back(u, v);
            ++deg[u];
            ++deg[v];
        }
    std::vector<char> picked(n, 0);
    std::vector<int> chosen;
    for (int v = d + 1; v < n; ++v) {
        chosen.clear();
        if (attach == Attachment::uniform) {
            while (static_cast<int>(chosen.size()) < d) {
                int u = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(v)));
                if (picked[u]) continue;
                picked[u] = 1;
                chosen.push_back(u);
            }
        } else {
            // Degree snapshot for this round; duplicates redrawn.
            std::uint64_t total = 0;
            for (int u = 0; u < v; ++u) total += static_cast<std::uint64_t>(deg[u]) + 1;
            while (static_cast<int>(chosen.size()) < d) {
                std::uint64_t x = rng.bounded(total);
                int u = 0;
                std::uint64_t acc = static_cast<std::uint64_t>(deg[0]) + 1;
                while (acc <= x) {
                    ++u;
                    acc += static_cast<std::uint64_t>(deg[u]) + 1;
                }
                if (picked[u]) continue;
                picked[u] = 1;
                chosen.push_back(u);
            }
        }
        for (int u : chosen) {
            picked[u] = 0;
            edges.emplace_back(u, v);
        }
        for (int u : chosen) ++deg[u];
        deg[v] = d;
    }
    return build_graph(n, edges);
}

Graph complete_graph(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return build_graph(n, edges);
}

Graph complete_bipartite(int a, int b) {
    if (a < 0 || b < 0) throw std::invalid_argument("complete_bipartite: negative side");
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < a; ++u)
        for (int v = 0; v < b; ++v) edges.emplace_back(u, a + v);
    return build_graph(a + b, edges);
}

Graph cycle_graph(int n) {
    if (n < 3) throw std::invalid_argument("cycle_graph: need n >= 3");
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
    return build_graph(n, edges);
}

Graph path_graph(int n) {
    if (n < 1) throw std::invalid_argument("path_graph: need n >= 1");
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
    return build_graph(n, edges);
}

Graph treewidth_gadget(int d, int s_count) {
    if (d < 2) throw std::invalid_argument("treewidth_gadget: need d >= 2");
    if (s_count < 1) throw std::invalid_argument("treewidth_gadget: need s_count >= 1");
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < d; ++u)
        for (int v = u + 1; v < d; ++v) edges.emplace_back(u, v);
    for (int s = 0; s < s_count; ++s)
        for (int u = 0; u < d; ++u) edges.emplace_back(u, d + s);
    return build_graph(d + s_count, edges);
}

MinDeltaResult random_d_degenerate_min_delta(int n, int d, Attachment attach,
                                             std::uint64_t seed, int min_delta,
                                             int max_attempts) {
    for (int j = 0; j < max_attempts; ++j) {
        std::uint64_t s = seed + static_cast<std::uint64_t>(j);
        Graph g = random_d_degenerate(n, d, attach, s);
        if (g.max_degree() >= min_delta) return {std::move(g), s, j + 1};
    }
    throw std::runtime_error("random_d_degenerate_min_delta: no graph with max degree >= " +
                             std::to_string(min_delta) + " within " +
                             std::to_string(max_attempts) + " attempts");
}

Graph generate(const GenSpec& spec, GenInfo* info) {
    GenInfo local;
    local.seed_used = spec.seed;
    Graph g;
    if (spec.kind == "random-d-degenerate") {
        if (spec.min_delta > 0) {
            MinDeltaResult r =
                random_d_degenerate_min_delta(spec.n, spec.d, spec.attach, spec.seed,
                                              spec.min_delta);
            g = std::move(r.graph);
            local.seed_used = r.seed_used;
            local.attempts = r.attempts;
        } else {
            g = random_d_degenerate(spec.n, spec.d, spec.attach, spec.seed);
        }
    } else if (spec.kind == "complete") {
        g = complete_graph(spec.n);
    } else if (spec.kind == "complete-bipartite") {
        g = complete_bipartite(spec.a, spec.b);
    } else if (spec.kind == "cycle") {
        g = cycle_graph(spec.n);
    } else if (spec.kind == "path") {
        g = path_graph(spec.n);
    } else if (spec.kind == "treewidth-gadget") {
        g = treewidth_gadget(spec.d, spec.s_count);
    } else {
        throw std::invalid_argument("generate: unknown kind \"" + spec.kind + "\"");
    }
    if (info) *info = local;
    return g;
}

}  // namespace equitree
