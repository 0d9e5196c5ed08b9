#include "equitree/coloring.hpp"

#include <algorithm>
#include <stdexcept>

namespace equitree {

Coloring Coloring::empty(int n, int k) {
    if (n < 0 || k < 0) throw std::invalid_argument("Coloring::empty: negative n or k");
    Coloring c;
    c.k = k;
    c.assignment.assign(n, 0);
    c.class_sizes.assign(k + 1, 0);
    return c;
}

Coloring Coloring::from_assignment(int k, std::vector<int> assignment) {
    Coloring c;
    c.k = k;
    c.class_sizes.assign(k + 1, 0);
    for (std::size_t v = 0; v < assignment.size(); ++v) {
        int col = assignment[v];
        if (col < 0 || col > k)
            throw std::invalid_argument("Coloring: vertex " + std::to_string(v) +
                                        " has color " + std::to_string(col) +
                                        " outside 0.." + std::to_string(k));
        if (col > 0) ++c.class_sizes[col];
    }
    c.assignment = std::move(assignment);
    return c;
}

bool Coloring::complete() const {
    return std::none_of(assignment.begin(), assignment.end(), [](int c) { return c == 0; });
}

void Coloring::set(int v, int color) {
    if (color < 0 || color > k) throw std::invalid_argument("Coloring::set: color out of range");
    int old = assignment[v];
    if (old > 0) --class_sizes[old];
    assignment[v] = color;
    if (color > 0) ++class_sizes[color];
}

bool class_induces_forest(const Graph& g, const Coloring& c, int color,
                          std::vector<int>* cycle_out) {
    // Explicit-frame DFS (faithful recursion order, so every non-tree edge
    // is a back edge to an ancestor and the parent walk below is sound).
    std::vector<int> parent(g.n, -2);  // -2 unvisited, -1 root
    struct Frame {
        int v;
        std::size_t idx;
    };
    for (int start = 0; start < g.n; ++start) {
        if (c.assignment[start] != color || parent[start] != -2) continue;
        parent[start] = -1;
        std::vector<Frame> stack{{start, 0}};
        while (!stack.empty()) {
            Frame& f = stack.back();
            const auto& row = g.adj[f.v];
            if (f.idx == row.size()) {
                stack.pop_back();
                continue;
            }
            int w = row[f.idx++];
            if (c.assignment[w] != color || w == parent[f.v]) continue;
            if (parent[w] != -2) {
                if (cycle_out) {
                    cycle_out->clear();
                    for (int x = f.v; x != w; x = parent[x]) cycle_out->push_back(x);
                    cycle_out->push_back(w);
                    std::reverse(cycle_out->begin(), cycle_out->end());
                }
                return false;
            }
            parent[w] = f.v;
            stack.push_back({w, 0});
        }
    }
    return true;
}

bool is_equitable(const Coloring& c) {
    if (!c.complete())
        throw std::invalid_argument("is_equitable: coloring is partial");
    if (c.k == 0) return c.n() == 0;
    auto [mn, mx] = std::minmax_element(c.class_sizes.begin() + 1, c.class_sizes.end());
    return *mx - *mn <= 1;
}

VerificationReport verify(const Graph& g, const Coloring& c) {
    VerificationReport rep;
    if (static_cast<int>(c.assignment.size()) != g.n)
        throw std::invalid_argument("verify: coloring size does not match graph");
    rep.complete = c.complete();
    for (int col = 1; col <= c.k; ++col) {
        std::vector<int> cycle;
        if (!class_induces_forest(g, c, col, &cycle)) {
            rep.forests_ok = false;
            rep.classes.push_back({col, false, std::move(cycle)});
        }
    }
    if (c.k > 0) {
        auto mn = std::min_element(c.class_sizes.begin() + 1, c.class_sizes.end());
        auto mx = std::max_element(c.class_sizes.begin() + 1, c.class_sizes.end());
        rep.size_min = *mn;
        rep.size_max = *mx;
        rep.color_min = static_cast<int>(mn - c.class_sizes.begin());
        rep.color_max = static_cast<int>(mx - c.class_sizes.begin());
        rep.equitable_ok = rep.complete && (rep.size_max - rep.size_min <= 1);
    } else {
        rep.equitable_ok = (g.n == 0);
    }
    return rep;
}

std::string VerificationReport::summary() const {
    if (ok()) return "ok";
    std::string s;
    if (!complete) s += "incomplete assignment; ";
    if (!forests_ok) {
        s += "non-forest classes:";
        for (const auto& cf : classes) s += " " + std::to_string(cf.color);
        s += "; ";
    }
    if (!equitable_ok && complete) {
        s += "class sizes " + std::to_string(size_max) + " (color " +
             std::to_string(color_max) + ") vs " + std::to_string(size_min) + " (color " +
             std::to_string(color_min) + ")";
    }
    return s;
}

}  // namespace equitree
